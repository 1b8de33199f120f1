"""Certified high-precision Euler products over primes in residue classes.

Main entry points: ``zeta_classes`` (products of (1 - p^-s)^-1 over each
lattice-invariant class mod q), ``euler_products_rational`` (products of
F(1/p)/G(1/p)) and ``named_constant``.
"""

from .arith import PrecisionContext
from .constants import named_constant
from .engine import MemoStore, zeta_classes
from .errors import (
    DomainError,
    InsufficientParametersError,
    ParseError,
    PoleError,
    PreconditionError,
    UnsupportedError,
)
from .formatting import format_digit_blocks, format_latex
from .group import build_structure, count_cyclic_subgroups
from .witt import RealPolynomial, euler_products_rational

__all__ = [
    "DomainError",
    "InsufficientParametersError",
    "MemoStore",
    "ParseError",
    "PoleError",
    "PrecisionContext",
    "PreconditionError",
    "RealPolynomial",
    "UnsupportedError",
    "build_structure",
    "count_cyclic_subgroups",
    "euler_products_rational",
    "format_digit_blocks",
    "format_latex",
    "named_constant",
    "zeta_classes",
]
