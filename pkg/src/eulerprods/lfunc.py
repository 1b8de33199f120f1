"""Hurwitz zeta, Dirichlet L-functions with small primes removed, and the
subgroup-indexed vectors of summed log L-values.

All values are ``arb``/``acb`` balls; Hurwitz zeta is delegated to Arb's
rigorous implementation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from flint import acb, arb, ctx as flint_ctx, fmpq

from .arith import PrecisionContext, primes_up_to, to_arb, zero_ball
from .errors import DomainError
from .group import DirichletCharacter, GroupStructure


def as_fraction(s) -> Fraction:
    """Exact rational form of a real argument (int, Fraction, decimal string or float)."""
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, float):
        return Fraction(repr(s))
    return Fraction(str(s))


def _check_s(s: Fraction) -> None:
    if s <= 1:
        raise DomainError(f"s must be > 1, got {s}")


def hurwitz_zeta(s, x, ctx: PrecisionContext) -> arb:
    """Enclosure of sum_{n >= 0} (n + x)^-s for real s > 1 and rational 0 < x <= 1."""
    s = as_fraction(s)
    x = Fraction(x)
    _check_s(s)
    if not 0 < x <= 1:
        raise DomainError(f"x must lie in (0, 1], got {x}")
    # the leading term x^-s is large; keep absolute accuracy
    extra = math.ceil(float(s) * math.log2(float(1 / x))) + 8
    with ctx.with_bits(extra).workprec():
        return to_arb(s).zeta(to_arb(x))


def _unit_root(e: int, n: int) -> acb:
    """exp(2 pi i e / n) at the current precision."""
    if e % n == 0:
        return acb(1)
    if 2 * e == n:
        return acb(-1)
    sin, cos = arb.sin_cos_pi_fmpq(fmpq(2 * e, n))
    return acb(cos, sin)


def _scaled_hurwitz(q: int, s: Fraction, units, ctx: PrecisionContext) -> dict[int, arb]:
    """q^-s zeta(s, a/q) = sum_{n = a mod q} n^-s for each unit a."""
    out = {}
    with ctx.workprec():
        qs = to_arb(q) ** to_arb(-s)
    for a in units:
        z = hurwitz_zeta(s, Fraction(a, q), ctx)
        with ctx.workprec():
            out[a] = z * qs
    return out


def _assemble(chi: DirichletCharacter, terms: dict[int, arb]) -> acb:
    total = acb(0)
    for a, t in terms.items():
        total += _unit_root(chi.exponent_of(a), chi.exponent) * t
    return total


def dirichlet_l(s, chi: DirichletCharacter, ctx: PrecisionContext) -> acb:
    """L(s, chi) = q^-s sum_a chi(a) zeta(s, a/q), with every Euler factor."""
    s = as_fraction(s)
    _check_s(s)
    units = [a for a in range(1, chi.modulus) if chi.exponent_of(a) is not None]
    terms = _scaled_hurwitz(chi.modulus, s, units, ctx)
    with ctx.workprec():
        return _assemble(chi, terms)


def _small_factor_product(chi: DirichletCharacter, s: Fraction, P: int) -> acb:
    """prod_{p < P} (1 - chi(p) p^-s) at the current precision."""
    prod = acb(1)
    minus_s = to_arb(-s)
    for p in primes_up_to(P - 1):
        e = chi.exponent_of(p)
        if e is None:
            continue
        prod *= 1 - _unit_root(e, chi.exponent) * to_arb(p) ** minus_s
    return prod


def l_truncated(s, chi: DirichletCharacter, P: int, ctx: PrecisionContext) -> acb:
    """L_P(s, chi) = prod_{p >= P} (1 - chi(p) p^-s)^-1."""
    s = as_fraction(s)
    if P < 2:
        raise DomainError(f"P must be >= 2, got {P}")
    L = dirichlet_l(s, chi, ctx)
    with ctx.workprec():
        return L * _small_factor_product(chi, s, P)


def tail_log_bound(f, P: int) -> arb:
    """Ball enclosing (1 + P/(f-1)) / P^f, an upper bound for |log zeta_P(f; q, A)|."""
    f = as_fraction(f)
    if f <= 1:
        raise DomainError(f"f must be > 1, got {f}")
    if P < 2:
        raise DomainError(f"P must be >= 2, got {P}")
    with flint_ctx.workprec(64):
        return (1 + to_arb(Fraction(P) / (f - 1))) * to_arb(P) ** to_arb(-f)


@dataclass(frozen=True)
class GammaVector:
    """Entry i encloses log prod_{chi in annihilator(subgroup i)} L_P(t s, chi)."""

    t: int
    s: Fraction
    P: int
    entries: tuple[arb, ...]


class CharacterLogs:
    """Lazily computed log L_P(f, chi) per character; conjugates reuse their partner."""

    def __init__(self, S: GroupStructure, f: Fraction, P: int, ctx: PrecisionContext):
        self.S, self.f, self.P, self.ctx = S, f, P, ctx
        self._terms: dict[int, arb] | None = None
        self._logs: dict[int, acb] = {}

    def log(self, i: int) -> acb:
        if i in self._logs:
            return self._logs[i]
        j = self.S.conjugate_index[i]
        if j in self._logs:
            value = self._logs[j].conjugate()
        else:
            if self._terms is None:
                self._terms = _scaled_hurwitz(self.S.q, self.f, self.S.units, self.ctx)
            chi = self.S.characters[i]
            with self.ctx.workprec():
                value = (_assemble(chi, self._terms) * _small_factor_product(chi, self.f, self.P)).log()
        self._logs[i] = value
        return value

    def real_log(self, i: int) -> arb:
        return self.log(i).real


def gamma_vector(
    S: GroupStructure,
    s,
    t: int,
    P: int,
    ctx: PrecisionContext,
    logs: CharacterLogs | None = None,
) -> GammaVector:
    """Gamma_s(t) with the small-value shortcut: entries provably below 10^-(D+guard)
    are replaced by the zero-centred ball of their a-priori bound."""
    s = as_fraction(s)
    f = t * s
    _check_s(f)
    if logs is None:
        logs = CharacterLogs(S, f, P, ctx)
    tail = tail_log_bound(f, P)
    eps = to_arb(ctx.eps)
    entries = []
    for ann in S.annihilators:
        bound = len(ann) * tail
        if bound < eps:
            entries.append(zero_ball(bound))
            continue
        with ctx.workprec():
            total = arb(0)
            for i in ann:
                total += logs.real_log(i)
        entries.append(total)
    return GammaVector(t=t, s=s, P=P, entries=tuple(entries))
