"""
Pydantic schemas for qmatrank.

Defines the data contracts shared by the CLI, the MCP server and the cache.
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator

from .constants import ORACLE_STATE_BUDGET, RANK1_POSITIVITY_DEFAULTS
from .helpers import is_prime_power

# Schema versions
SCHEMA_VERSION_RESULTS = "1.0.0"
SCHEMA_VERSION_REPORT = "1.0.0"
SCHEMA_VERSION_CACHE = "1.0.0"


# ============================================================================
# Input Schemas
# ============================================================================

class CliConfig(BaseModel):
    """Options shared by every command."""

    cache_path: Optional[str] = Field(None, description="JSON-lines result cache; disabled when unset")
    budget: int = Field(ORACLE_STATE_BUDGET, gt=0, description="Oracle state budget")
    q_list: Optional[List[int]] = Field(None, description="Sample prime powers overriding the defaults")
    output_format: str = Field("text", pattern="^(text|json)$")
    threads: Optional[int] = Field(None, ge=1)

    model_config = ConfigDict(validate_assignment=True)

    @field_validator("q_list")
    @classmethod
    def _prime_powers_only(cls, value: Optional[List[int]]) -> Optional[List[int]]:
        if value is None:
            return value
        bad = [q for q in value if not is_prime_power(q)]
        if bad:
            raise ValueError(f"not prime powers: {bad}")
        if len(set(value)) != len(value):
            raise ValueError("sample points must be distinct")
        return value


class SampleSpec(BaseModel):
    """Board sampling for the rank-one positivity sweep."""

    exhaustive_size: int = Field(RANK1_POSITIVITY_DEFAULTS["exhaustive_size"], ge=1, le=5)
    random_size: int = Field(RANK1_POSITIVITY_DEFAULTS["random_size"], ge=1, le=10)
    random_count: int = Field(RANK1_POSITIVITY_DEFAULTS["random_count"], ge=0)
    seed: int = Field(RANK1_POSITIVITY_DEFAULTS["seed"])

    model_config = ConfigDict(validate_assignment=True)


# ============================================================================
# Result Schemas
# ============================================================================

class CountResultModel(BaseModel):
    """Wire form of a counting answer."""

    schema_version: str = Field(SCHEMA_VERSION_RESULTS)
    kind: str = Field(..., pattern="^(polynomial|samples)$")
    poly: Optional[Dict[str, str]] = Field(None, description="exponent -> coefficient")
    pretty: Optional[str] = None
    factored: Optional[str] = None
    samples: Optional[List[Dict[str, str]]] = None
    quasi: Optional[Dict[str, Any]] = None
    provenance: str = Field(..., pattern="^(formula|reduction|oracle\\+interpolation)$")
    trace: Optional[Dict[str, Any]] = None
    validated_at: Optional[int] = None

    model_config = ConfigDict(validate_assignment=True)


class Failure(BaseModel):
    """One counterexample in a verification sweep."""

    witness: str
    expected: str
    actual: str
    detail: Optional[Dict[str, Any]] = None


class VerificationReport(BaseModel):
    """Outcome of one verification harness."""

    schema_version: str = Field(SCHEMA_VERSION_REPORT)
    claim: str
    n_range: List[int] = Field(..., min_length=2, max_length=2)
    instances: int = Field(0, ge=0)
    skipped_by_symmetry: int = Field(0, ge=0)
    failures: List[Failure] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)
    wall_time_s: float = Field(0.0, ge=0)

    model_config = ConfigDict(validate_assignment=True)

    @computed_field
    @property
    def passed(self) -> bool:
        return not self.failures


# ============================================================================
# Cache Schemas
# ============================================================================

class CacheRecord(BaseModel):
    """One polynomial answer in the JSON-lines cache."""

    schema_version: str = Field(SCHEMA_VERSION_CACHE)
    key: str = Field(..., min_length=64, max_length=64)
    m: int = Field(..., ge=0)
    n: int = Field(..., ge=0)
    r: int = Field(..., ge=0)
    cells: List[List[int]]
    poly: Dict[str, str]

    model_config = ConfigDict(validate_assignment=True)
