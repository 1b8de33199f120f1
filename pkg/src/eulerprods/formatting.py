"""Certified decimal output of balls, grouped in blocks of five digits."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from flint import arb, fmpz

from .arith import ball_bounds

BLOCK = 5


@dataclass(frozen=True)
class CertifiedDigits:
    """``digits`` holds the integer part followed by ``n`` fractional digits (sign separate).

    The printed number is within one unit of its last place of every point of
    the enclosure; ``truncated`` says it is moreover the exact truncation.
    """

    negative: bool
    integer: str
    fraction: str
    requested: int
    truncated: bool

    @property
    def n(self) -> int:
        return len(self.fraction)

    @property
    def shortfall(self) -> bool:
        return self.n < self.requested


def _floor_scaled(x: Fraction, n: int) -> int:
    return math.floor(x * 10**n)


def _start(lo: Fraction, hi: Fraction, decimals: int) -> int:
    # no n with (hi - lo) 10^n >= 2 can certify n digits
    width = hi - lo
    if width == 0:
        return decimals
    n = math.floor(math.log10(2) - (math.log10(width.numerator) - math.log10(width.denominator))) + 1
    return max(0, min(decimals, n))


def certify(value: arb, decimals: int) -> CertifiedDigits | None:
    """Largest n <= decimals for which the enclosure pins down n fractional digits."""
    if not value.is_finite():
        return None
    lo, hi = ball_bounds(value)
    negative = hi <= 0 and lo < 0
    if negative:
        lo, hi = -hi, -lo
    elif lo < 0:
        # straddles zero: print as many zeros as keep every point within one unit
        for n in range(decimals, -1, -1):
            if max(hi, -lo) * 10**n < 1:
                return CertifiedDigits(False, "0", "0" * n, decimals, False)
        return None
    for n in range(_start(lo, hi, decimals), -1, -1):
        a, b = _floor_scaled(lo, n), _floor_scaled(hi, n)
        if a == b:
            k, exact = a, True
        elif b == a + 1 and hi * 10**n - b < 1 and b - lo * 10**n < 1:
            # the ball straddles the single boundary b / 10^n (e.g. 1 +/- tiny)
            k, exact = b, False
        else:
            continue
        s = fmpz(k).str().rjust(n + 1, "0")
        return CertifiedDigits(negative, s[: len(s) - n], s[len(s) - n :], decimals, exact)
    return None


def _blocks(frac: str, sep: str) -> str:
    return sep.join(frac[i : i + BLOCK] for i in range(0, len(frac), BLOCK))


def format_digit_blocks(value: arb, decimals: int) -> str:
    """e.g. ``0.63890 94054 45343 88225``; appends a note when fewer digits are certified."""
    c = certify(value, decimals)
    if c is None:
        return f"? (no digit certified; enclosure {value})"
    head = ("-" if c.negative else "") + c.integer
    text = head if not c.fraction else f"{head}.{_blocks(c.fraction, ' ')}"
    if c.shortfall:
        text += f"  [shortfall: {c.n} of {decimals} decimals certified]"
    return text


def format_latex(value: arb, decimals: int, blocks_per_line: int = 10) -> str:
    """align-ready digits: ``0.&63890\\,94054...`` with ``\\\\&`` every ``blocks_per_line`` blocks."""
    c = certify(value, decimals)
    if c is None:
        return r"\text{(uncertified)}"
    head = ("-" if c.negative else "") + c.integer
    groups = [c.fraction[i : i + BLOCK] for i in range(0, len(c.fraction), BLOCK)]
    lines = [r"\,".join(groups[i : i + blocks_per_line]) for i in range(0, len(groups), blocks_per_line)]
    body = "\n\\\\&".join(lines)
    tail = r"\cdots" if not c.shortfall else r"\ (\text{shortfall})"
    return f"{head}.&{body}{tail}" if lines else head


def decimal_string(x: arb, digits: int) -> str:
    """Midpoint (or radius) as a portable decimal string with ``digits`` significant digits."""
    return x.mid().str(digits, radius=False, more=True)
