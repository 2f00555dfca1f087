# -*- coding: utf-8 -*-
"""
qmatrank utilities package.
"""

from .counter import CountResult, count_auto, count_value
from .diagram import Board, ShapeSpec, build
from .fields import FieldSpec, make_field
from .oracle import CountQuery
from .perms import Permutation, poincare, rothe, left_hull
from .qpoly import LaurentPoly
from .rooks import NE, SE, qrook
from .verify import run_claim

__all__ = [
    # Counting
    "CountQuery",
    "CountResult",
    "count_auto",
    "count_value",

    # Boards and fields
    "Board",
    "ShapeSpec",
    "build",
    "FieldSpec",
    "make_field",
    "LaurentPoly",

    # Rook theory
    "qrook",
    "SE",
    "NE",

    # Permutations
    "Permutation",
    "rothe",
    "left_hull",
    "poincare",

    # Verification
    "run_claim",
]
