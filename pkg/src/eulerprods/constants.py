"""Named constants assembled from class products and closed-form prefactors."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from flint import arb, fmpq

from .arith import PrecisionContext, to_arb
from .engine import zeta_classes
from .errors import DomainError
from .witt import euler_products_rational

# guard decimals carried by the class products beyond the requested output
GUARD = 8

SHANKS = ("1-2*x-7*x^2-4*x^3", "1-2*x+x^2")
LAL = ("1-8*x", "1-8*x+16*x^2")


def _pi() -> arb:
    return arb.pi()


def _log_1_sqrt2() -> arb:
    return (1 + arb(2).sqrt()).log()


def _alpha0_3(D: int) -> arb:
    z = zeta_classes(3, 2, D + GUARD, P=100).by_residue(2).full
    return z.sqrt() / (arb(2).sqrt() * to_arb(3) ** to_arb(Fraction(1, 4)))


def _beta0(D: int) -> arb:
    T = zeta_classes(12, 2, D + GUARD, P=100)
    prod = T.by_residue(5).full * T.by_residue(7).full * T.by_residue(11).full
    quarter = to_arb(Fraction(1, 4))
    pref = (
        to_arb(3) ** quarter
        * _pi().sqrt()
        / to_arb(2) ** to_arb(Fraction(5, 4))
        * (2 + arb(3).sqrt()).log() ** quarter
        / arb(fmpq(1, 4)).gamma()
    )
    return pref * prod.sqrt()


def _shanks_product(D: int) -> arb:
    return euler_products_rational(8, *SHANKS, D + GUARD, 400).by_residue(1).full


def _lal_product(D: int) -> arb:
    return euler_products_rational(8, *LAL, D + GUARD, 400).by_residue(1).full


def _shanks_I(D: int) -> arb:
    return _pi() ** 2 / (16 * _log_1_sqrt2()) * _shanks_product(D)


def _lal_lambda(D: int) -> arb:
    return _pi() ** 4 / (2**7 * _log_1_sqrt2() ** 2) * _shanks_product(D) ** 2 * _lal_product(D)


def _gs_A(D: int) -> arb:
    prod = euler_products_rational(4, *SHANKS, D + GUARD, 100).by_residue(1).full
    return _pi() ** 2 / 2 * prod


CONSTANTS: dict[str, Callable[[int], arb]] = {
    "alpha0_3": _alpha0_3,
    "beta0": _beta0,
    "shanks_product": _shanks_product,
    "shanks_I": _shanks_I,
    "lal_product": _lal_product,
    "lal_lambda": _lal_lambda,
    "gs_A": _gs_A,
}


def named_constant(name: str, decimals: int, ctx: PrecisionContext | None = None) -> arb:
    """Enclosure of a named constant, tight to well below 10^-decimals."""
    try:
        build = CONSTANTS[name]
    except KeyError:
        raise DomainError(f"unknown constant {name!r}; choose from {', '.join(CONSTANTS)}") from None
    if decimals < 1:
        raise DomainError(f"decimals must be >= 1, got {decimals}")
    ctx = ctx or PrecisionContext(decimals + GUARD)
    with ctx.workprec():
        return build(decimals)
