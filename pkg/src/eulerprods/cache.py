"""Optional on-disk store of Gamma vectors as portable decimal strings.

Stored balls stay rigorous: the midpoint is written in decimal and the
conversion error is folded into the written radius (rounded up).
"""

from __future__ import annotations

import json
import math
import os
from decimal import Decimal
from fractions import Fraction
from pathlib import Path

from flint import arb, ctx as flint_ctx

from .arith import LOG2_10, midpoint, to_arb, widen
from .engine import MemoStore
from .lfunc import GammaVector

FORMAT = 1


def _log10_abs(u: arb) -> float | None:
    """log10 of the midpoint magnitude, without forming the number (exponents may be huge)."""
    man, exp = (int(v) for v in u.mid().man_exp())
    man = abs(man)
    if man == 0:
        return None
    top = man >> max(man.bit_length() - 53, 0)
    shift = man.bit_length() - top.bit_length()
    return (math.log2(top) + shift + exp) * math.log10(2)


def _upper_decimal(u: arb) -> str:
    """Decimal string >= the nonnegative ball ``u`` (three significant digits, rounded up)."""
    lg = _log10_abs(u.abs_upper())
    if lg is None:
        return "0"
    E = math.floor(lg)
    lead = 10 ** (lg - E)
    # +2 in the last place absorbs float error in lg
    return f"{math.ceil(lead * 100) + 2}e{E - 2}"


def ball_digits(x: arb) -> int:
    """Significant digits worth keeping: enough to resolve the radius, plus five."""
    m, r = _log10_abs(x), _log10_abs(x.rad())
    if m is None:
        return 5
    if r is None:
        return max(20, math.ceil(flint_ctx.prec * math.log10(2)) + 5)
    return max(10, math.ceil(m - r) + 5)


def encode_ball(x: arb, digits: int | None = None) -> tuple[str, str]:
    if digits is None:
        digits = ball_digits(x)
    m_str = x.mid().str(digits, radius=False, more=True)
    err = abs(Fraction(Decimal(m_str)) - midpoint(x))
    return m_str, _upper_decimal(x.rad() + to_arb(err))


def decode_ball(m_str: str, r_str: str) -> arb:
    # enough bits for every written digit; the decimal radius is exact as a Fraction
    bits = math.ceil(len(m_str) * LOG2_10) + 64
    with flint_ctx.workprec(bits):
        return widen(to_arb(Fraction(Decimal(m_str))), Fraction(Decimal(r_str)))


def _key(q: int, P: int) -> str:
    return f"{q}:{P}"


def load_into(path: str | os.PathLike, q: int, P: int, memo: MemoStore) -> int:
    """Preload cached Gamma vectors for (q, P); returns how many were loaded."""
    path = Path(path)
    if not path.exists():
        return 0
    memo.claim(q, P)
    data = json.loads(path.read_text())
    if data.get("format") != FORMAT:
        return 0
    n = 0
    for f_str, rec in data.get("gamma", {}).get(_key(q, P), {}).items():
        f = Fraction(f_str)
        entries = tuple(decode_ball(m, r) for m, r in rec["entries"])
        memo.gamma_cache[f] = GammaVector(t=rec["t"], s=Fraction(rec["s"]), P=P, entries=entries)
        n += 1
    return n


def save_from(path: str | os.PathLike, q: int, P: int, memo: MemoStore) -> None:
    path = Path(path)
    data = {"format": FORMAT, "gamma": {}}
    if path.exists():
        try:
            old = json.loads(path.read_text())
            if old.get("format") == FORMAT:
                data = old
        except json.JSONDecodeError:
            pass
    bucket = data["gamma"].setdefault(_key(q, P), {})
    for f, g in memo.gamma_cache.items():
        entries = [encode_ball(x) for x in g.entries]
        digits = min(len(m) for m, _ in entries)
        prev = bucket.get(str(f))
        if prev is not None and prev.get("digits", 0) >= digits:
            continue
        bucket[str(f)] = {"t": g.t, "s": str(g.s), "digits": digits, "entries": entries}
    path.write_text(json.dumps(data, indent=1))
