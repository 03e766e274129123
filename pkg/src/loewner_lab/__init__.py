"""Numerical verification of Aczel-type operator inequalities."""

from .checkers import CheckResult
from .constants import kantorovich, kantorovich_gen, reverse_constant, specht
from .means import amean, gmean

__version__ = "0.1.0"

__all__ = [
    "CheckResult",
    "amean",
    "gmean",
    "kantorovich",
    "kantorovich_gen",
    "reverse_constant",
    "specht",
]
