# -*- coding: utf-8 -*-
"""
Tunable limits shared across the library.

Values are read once from the configuration layer; the literals below are the
fallbacks when no YAML file provides them.
"""

from .config import get_config

# Finite fields
MAX_FIELD_ORDER = get_config("fields.max_order", 2 ** 20)
FIELD_TABLE_LIMIT = get_config("fields.table_limit", 1024)

# Per-q oracle
ORACLE_STATE_BUDGET = get_config("oracle.state_budget", 10 ** 7)
NAIVE_FREE_LIMIT = get_config("oracle.naive_free_limit", 12)

# Interpolation sample points
SAMPLE_PRIME_POWERS = get_config(
    "sampling.prime_powers",
    [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32],
)

# Dispatcher
MEMOIZE_COUNTS = get_config("counter.memoize", True)
VALIDATE_WITH_ORACLE = get_config("counter.validate_with_oracle", True)
VALIDATION_Q = get_config("counter.validation_q", 3)
RANK1_MAX_ROWS = get_config("counter.rank1_max_rows", 20)

# Permutations
MAX_POINCARE_N = get_config("perms.max_poincare_n", 8)
MAX_PATTERN_N = get_config("perms.max_pattern_n", 10)

# Generating series
MAX_SERIES_N = get_config("series.max_n", 9)

# Verification harnesses
VERIFY_SAMPLE_Q = get_config("verify.sample_q", [2, 3])
RANK1_POSITIVITY_DEFAULTS = get_config(
    "verify.rank1_positivity",
    {"exhaustive_size": 4, "random_size": 6, "random_count": 200, "seed": 0},
)

# Patterns named by the theory
VEXILLARY_PATTERN = "2143"
SKEW_VEXILLARY_PATTERNS = (
    "24153", "25143", "31524", "31542", "32514",
    "32541", "42153", "52143", "214365",
)
HULL_PATTERNS = ("1324", "24153", "31524", "426153")
