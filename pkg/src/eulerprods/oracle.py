"""Brute-force truncated Euler products over sieved primes.

Deliberately independent of the L-function and recursion code: only the
prime sieve and ball conversion are shared. Slow, small, obviously right.
"""

from __future__ import annotations

from fractions import Fraction

from flint import arb

from .arith import PrecisionContext, primes_up_to, to_arb
from .errors import DomainError, PoleError

DEFAULT_LIMIT = 10**4
MAX_LIMIT = 10**8


def _check_range(P: int, limit: int) -> None:
    if P < 2:
        raise DomainError(f"P must be >= 2, got {P}")
    if limit < P:
        raise DomainError(f"limit must be >= P, got limit={limit} < P={P}")
    if limit > MAX_LIMIT:
        raise DomainError(f"limit {limit} exceeds {MAX_LIMIT}")


def _class_primes(q: int, class_elems, P: int, limit: int) -> list[int]:
    wanted = {a % q for a in class_elems}
    return [p for p in primes_up_to(limit) if p >= P and p % q in wanted]


def zeta_class_truncated(
    q: int, s, class_elems, P: int = 2, limit: int = DEFAULT_LIMIT, ctx: PrecisionContext | None = None
) -> tuple[arb, arb]:
    """(prod_{P <= p <= limit, p mod q in class} (1 - p^-s)^-1, tail factor T).

    The untruncated product lies in value * [1, T].
    """
    s = Fraction(s)
    if s <= 1:
        raise DomainError(f"s must be > 1, got {s}")
    _check_range(P, limit)
    ctx = ctx or PrecisionContext(30)
    with ctx.workprec():
        minus_s = to_arb(-s)
        value = arb(1)
        for p in _class_primes(q, class_elems, P, limit):
            value /= 1 - to_arb(p) ** minus_s
        L = to_arb(limit)
        # sum_{n > L} n^-s <= L^-s + L^(1-s)/(s-1); 1/(1 - L^-s) covers -log(1-x) <= x/(1-x)
        head = L**minus_s
        tail_log = (head + L ** (1 + minus_s) / to_arb(s - 1)) / (1 - head)
        return value, tail_log.exp()


def _poly_eval(coeffs: tuple[Fraction, ...], x: arb) -> arb:
    acc = arb(0)
    for c in reversed(coeffs):
        acc = acc * x + to_arb(Fraction(c))
    return acc


def _coefficients(poly) -> tuple[Fraction, ...]:
    coeffs = getattr(poly, "coefficients", poly)
    return tuple(Fraction(c) for c in coeffs)


def rational_truncated(
    q: int, F, G, class_elems, P: int, limit: int = DEFAULT_LIMIT, ctx: PrecisionContext | None = None
) -> tuple[arb, arb]:
    """(prod_{P <= p <= limit, p in class} F(1/p)/G(1/p), tail factor T).

    F and G are coefficient sequences (constant term first) or objects with a
    ``coefficients`` attribute. The untruncated product lies in value * [1/T, T].
    """
    fc, gc = _coefficients(F), _coefficients(G)
    if not fc or not gc or fc[0] != 1 or gc[0] != 1:
        raise DomainError("F and G need constant term 1")
    if (fc[1] if len(fc) > 1 else 0) != (gc[1] if len(gc) > 1 else 0):
        raise DomainError("F and G must agree up to the x term")
    _check_range(P, limit)
    beta = max(Fraction(2), sum(map(abs, fc[1:]), Fraction(0)), sum(map(abs, gc[1:]), Fraction(0)))
    if limit < 2 * beta:
        raise DomainError(f"limit {limit} must be >= 2*beta = {2 * beta}")
    max_deg = max(len(fc) - 1, len(gc) - 1, 1)
    ctx = ctx or PrecisionContext(30)
    with ctx.workprec():
        value = arb(1)
        for p in _class_primes(q, class_elems, P, limit):
            x = to_arb(Fraction(1, p))
            den = _poly_eval(gc, x)
            if den.contains(0):
                raise PoleError(f"G(1/{p}) = 0 or not separable from 0")
            value *= _poly_eval(fc, x) / den
        # per prime p > limit >= 2 beta: |log F/G| <= 2 maxdeg beta^2 / p^2; sum_{n > L} n^-2 <= 1/L
        tail_log = to_arb(2 * max_deg * beta**2 / limit)
        return value, tail_log.exp()


def enclose(value: arb, tail: arb, one_sided: bool = False) -> arb:
    """Ball holding value * [1/tail, tail] (or value * [1, tail] when ``one_sided``)."""
    lo = value if one_sided else value / tail
    hi = value * tail
    return lo.union(hi)
