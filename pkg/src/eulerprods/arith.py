"""Ball arithmetic plumbing, prime generation and elementary arithmetic functions.

Real enclosures are ``flint.arb`` balls (midpoint + radius, rigorous
propagation). Everything else in the package treats ``BallReal`` as that type.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

import numpy as np
from flint import arb, ctx, fmpq

from .errors import DomainError

BallReal = arb

LOG2_10 = math.log2(10)


@dataclass(frozen=True)
class PrecisionContext:
    """Decimal target plus guard digits; ``working_bits`` is derived."""

    target_decimals: int
    guard_digits: int = 10
    extra_bits: int = 0

    def __post_init__(self):
        if self.target_decimals < 1:
            raise DomainError(f"target_decimals must be >= 1, got {self.target_decimals}")
        if self.guard_digits < 0:
            raise DomainError(f"guard_digits must be >= 0, got {self.guard_digits}")

    @classmethod
    def for_terms(cls, target_decimals: int, n_terms: int, extra_bits: int = 0) -> PrecisionContext:
        """Default guard: 10 + ceil(log10(number of summed terms))."""
        guard = 10 + math.ceil(math.log10(max(n_terms, 1)))
        return cls(target_decimals, guard, extra_bits)

    @property
    def working_bits(self) -> int:
        return math.ceil((self.target_decimals + self.guard_digits) * LOG2_10) + self.extra_bits

    @property
    def eps(self) -> Fraction:
        """Absolute accuracy aimed at: 10^-(target + guard)."""
        return Fraction(1, 10 ** (self.target_decimals + self.guard_digits))

    def with_decimals(self, extra_decimals: int) -> PrecisionContext:
        return PrecisionContext(self.target_decimals + extra_decimals, self.guard_digits, self.extra_bits)

    def with_bits(self, extra_bits: int) -> PrecisionContext:
        return PrecisionContext(self.target_decimals, self.guard_digits, self.extra_bits + extra_bits)

    @contextmanager
    def workprec(self) -> Iterator[None]:
        # flint's precision is process-global; balls computed inside stay valid outside.
        with ctx.workprec(self.working_bits):
            yield


# ---------------------------------------------------------------------------
# Ball helpers


def to_arb(x) -> arb:
    """Convert int / Fraction / fmpq / str / arb to a ball at the current precision."""
    if isinstance(x, arb):
        return x
    if isinstance(x, Fraction):
        return arb(fmpq(x.numerator, x.denominator))
    if isinstance(x, float):
        x = Fraction(x)
        return arb(fmpq(x.numerator, x.denominator))
    return arb(x)


def _dyadic(man_exp: tuple) -> Fraction:
    m, e = (int(v) for v in man_exp)
    return Fraction(m * 2**e) if e >= 0 else Fraction(m, 2 ** (-e))


def ball_bounds(x: arb) -> tuple[Fraction, Fraction]:
    """Exact rational endpoints [mid - rad, mid + rad] of a ball."""
    if not x.is_finite():
        raise ValueError(f"ball is not finite: {x}")
    mid = _dyadic(x.mid().man_exp())
    rad = _dyadic(x.rad().man_exp())
    return mid - rad, mid + rad


def radius(x: arb) -> Fraction:
    return _dyadic(x.rad().man_exp())


def midpoint(x: arb) -> Fraction:
    return _dyadic(x.mid().man_exp())


def upper_bound(x: arb) -> Fraction:
    return ball_bounds(x)[1]


def widen(x: arb, err) -> arb:
    """Return ``x`` with its radius enlarged by the nonnegative bound ``err``."""
    if isinstance(err, arb):
        return x + arb(0, err.abs_upper())
    err = Fraction(err)
    if err < 0:
        raise ValueError("error bound must be nonnegative")
    if err == 0:
        return x
    return x + arb(0, to_arb(err).abs_upper())


def zero_ball(rad) -> arb:
    return widen(arb(0), rad)


def contains_fraction(x: arb, value: Fraction) -> bool:
    lo, hi = ball_bounds(x)
    return lo <= value <= hi


def overlaps(x: arb, y: arb) -> bool:
    xl, xh = ball_bounds(x)
    yl, yh = ball_bounds(y)
    return xl <= yh and yl <= xh


def ball_pow_fraction(x: arb, e: Fraction) -> arb:
    """x**e for a positive ball x and exact rational exponent."""
    if e.denominator == 1:
        return x ** int(e)
    return x ** fmpq(e.numerator, e.denominator)


# ---------------------------------------------------------------------------
# Primes and multiplicative functions

_SEGMENT = 1 << 20


def primes_up_to(limit: int) -> list[int]:
    """All primes p <= limit in increasing order (segmented Eratosthenes)."""
    if limit < 2:
        return []
    root = math.isqrt(limit)
    small = _simple_sieve(root)
    out = [int(p) for p in small]
    lo = root + 1
    while lo <= limit:
        hi = min(lo + _SEGMENT, limit + 1)
        seg = np.ones(hi - lo, dtype=bool)
        for p in small:
            p = int(p)
            start = max(p * p, ((lo + p - 1) // p) * p)
            if start >= hi:
                continue
            seg[start - lo :: p] = False
        out.extend(int(v) for v in np.nonzero(seg)[0] + lo)
        lo = hi
    return out


def _simple_sieve(n: int) -> np.ndarray:
    if n < 2:
        return np.array([], dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for i in range(2, math.isqrt(n) + 1):
        if flags[i]:
            flags[i * i :: i] = False
    return np.nonzero(flags)[0]


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorisation of n >= 1 as ((p, e), ...) with p increasing."""
    if n < 1:
        raise DomainError(f"factorize needs n >= 1, got {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def mobius(n: int) -> int:
    if n < 1:
        raise DomainError(f"mobius is defined for n >= 1, got {n}")
    f = factorize(n)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def divisors(n: int) -> list[int]:
    if n < 1:
        raise DomainError(f"divisors needs n >= 1, got {n}")
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def divisor_count(n: int) -> int:
    if n < 1:
        raise DomainError(f"divisor_count is defined for n >= 1, got {n}")
    return math.prod(e + 1 for _, e in factorize(n))


def euler_phi(n: int) -> int:
    if n < 1:
        raise DomainError(f"euler_phi needs n >= 1, got {n}")
    out = n
    for p, _ in factorize(n):
        out = out // p * (p - 1)
    return out
