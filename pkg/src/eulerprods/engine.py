"""Unfolded subgroup-lattice recursion for log zeta_P(s; q, A) on every
lattice-invariant class, with a certified truncation budget.

The approximation is

    V_s(1) ~ sum_{v < r} (-1)^v sum_{d_1...d_v <= 2^r} (N_{d_1}/d_1)...(N_{d_v}/d_v) M1^-1 Gamma_s(d_1...d_v)

where the d_i run over divisors > 1 of exp G. Rational matrix products are
exact; balls enter only when those are applied to Gamma vectors.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

from flint import arb, fmpq, fmpq_mat

from .arith import (
    PrecisionContext,
    divisor_count,
    divisors,
    primes_up_to,
    radius,
    to_arb,
    widen,
)
from .errors import InsufficientParametersError, UnsupportedError
from .group import GroupStructure, build_structure
from .lfunc import CharacterLogs, GammaVector, as_fraction, gamma_vector, tail_log_bound
from .matrices import RecursionMatrices, recursion_matrices

log = logging.getLogger(__name__)

MAX_Q = 10**4
MAX_DECIMALS = 10**4
MAX_R = 16


def divisor_tuples(exp_g: int, r: int) -> list[tuple[int, ...]]:
    """Tuples of divisors > 1 of exp_g, length <= r-1, product <= 2^r (empty tuple included)."""
    steps = [d for d in divisors(exp_g) if d > 1]
    z = 2**r
    out = [()]
    frontier = [((), 1)]
    for _ in range(r - 1):
        nxt = []
        for tup, prod in frontier:
            for d in steps:
                if prod * d <= z:
                    nxt.append((tup + (d,), prod * d))
        out.extend(t for t, _ in nxt)
        frontier = nxt
    return sorted(out, key=lambda t: (math.prod(t), t))


def fineq_error_bound(n_classes: int, exp_g: int, s, P: int, r: int) -> arb:
    """Truncation bound 1/2 (1 + (r-1)/n) (n d(exp G)/2)^(r-1) (1 + P/(s 2^r - 1)) / P^(s 2^r)."""
    s = as_fraction(s)
    lead = Fraction(1, 2) * (1 + Fraction(r - 1, n_classes)) * Fraction(n_classes * divisor_count(exp_g), 2) ** (r - 1)
    return to_arb(lead) * tail_log_bound(s * 2**r, P)


def choose_r(n_classes: int, exp_g: int, s, P: int, target_decimals: int) -> int:
    """Smallest r in [2, 16] whose truncation bound is <= 10^-(target + 2)."""
    goal = to_arb(Fraction(1, 10 ** (target_decimals + 2)))
    for r in range(2, MAX_R + 1):
        if fineq_error_bound(n_classes, exp_g, s, P, r) <= goal:
            return r
    raise InsufficientParametersError(
        f"no r <= {MAX_R} reaches 10^-{target_decimals} with P={P}; increase P"
    )


@dataclass
class MemoStore:
    """Gamma vectors keyed by their argument t*s; matrix products keyed by tuple.

    One store serves a single (q, P); ``owner`` is set on first use.
    """

    gamma_cache: dict[Fraction, GammaVector] = field(default_factory=dict)
    matrix_cache: dict[tuple[int, ...], fmpq_mat] = field(default_factory=dict)
    weights_cache: dict[int, dict[int, fmpq_mat]] = field(default_factory=dict)
    enabled: bool = True
    owner: tuple[int, int] | None = None

    def claim(self, q: int, P: int) -> None:
        if self.owner is None:
            self.owner = (q, P)
        elif self.owner != (q, P):
            raise ValueError(f"MemoStore built for (q, P) = {self.owner} reused with {(q, P)}")


def _tuple_product(mats: RecursionMatrices, tup: tuple[int, ...], memo: MemoStore) -> fmpq_mat:
    """(N_{d_1}/d_1) ... (N_{d_v}/d_v) M1^-1, built from the cached suffix."""
    if memo.enabled and tup in memo.matrix_cache:
        return memo.matrix_cache[tup]
    if not tup:
        out = mats.m1_inverse
    else:
        d = tup[0]
        out = fmpq_mat(mats.nd[d]) * _tuple_product(mats, tup[1:], memo) / d
    if memo.enabled:
        memo.matrix_cache[tup] = out
    return out


def recursion_weights(S: GroupStructure, mats: RecursionMatrices, r: int, memo: MemoStore) -> dict[int, fmpq_mat]:
    """Signed tuple products summed per product D (tuples sharing D share Gamma_s(D))."""
    if memo.enabled and r in memo.weights_cache:
        return memo.weights_cache[r]
    weights: dict[int, fmpq_mat] = {}
    for tup in divisor_tuples(S.exponent, r):
        D = math.prod(tup)
        term = _tuple_product(mats, tup, memo)
        if len(tup) % 2:
            term = -term
        weights[D] = weights[D] + term if D in weights else term
    if memo.enabled:
        memo.weights_cache[r] = weights
    return weights


def _row_abs_sum(M: fmpq_mat) -> Fraction:
    n, m = M.nrows(), M.ncols()
    best = Fraction(0)
    for i in range(n):
        row = sum(abs(Fraction(int(M[i, j].p), int(M[i, j].q))) for j in range(m))
        best = max(best, row)
    return best


def amplification(weights: dict[int, fmpq_mat]) -> Fraction:
    """Worst-case factor by which Gamma-level absolute errors reach V."""
    return sum((_row_abs_sum(W) for W in weights.values()), Fraction(0))


def engine_context(ctx: PrecisionContext, weights: dict[int, fmpq_mat]) -> PrecisionContext:
    """Add guard digits for the weight amplification and the number of summed terms."""
    amp = max(amplification(weights), Fraction(1))
    extra = math.ceil(math.log10(amp)) + math.ceil(math.log10(len(weights) + 1)) + 1
    return PrecisionContext(ctx.target_decimals, ctx.guard_digits + extra, ctx.extra_bits)


def get_gamma(S: GroupStructure, s: Fraction, D: int, P: int, ctx: PrecisionContext, memo: MemoStore) -> GammaVector:
    key = s * D
    if memo.enabled and key in memo.gamma_cache:
        g = memo.gamma_cache[key]
        # entries preloaded from a lower-precision run are recomputed
        tol = to_arb(Fraction(1, 10 ** (ctx.target_decimals + ctx.guard_digits // 2)))
        if all(e.rad() <= tol for e in g.entries):
            return g
    g = gamma_vector(S, s, D, P, ctx, logs=CharacterLogs(S, key, P, ctx))
    if memo.enabled:
        memo.gamma_cache[key] = g
    return g


def _apply(W: fmpq_mat, entries: tuple[arb, ...]) -> list[arb]:
    n = W.nrows()
    out = []
    for i in range(n):
        acc = arb(0)
        for j in range(n):
            w = W[i, j]
            if w != 0:
                acc += arb(fmpq(w)) * entries[j]
        out.append(acc)
    return out


@dataclass(frozen=True)
class VVector:
    """entries[i] encloses log zeta_P(s; q, classes[i]); ``truncation`` was added to each radius."""

    q: int
    s: Fraction
    P: int
    r: int
    entries: tuple[arb, ...]
    truncation: arb | None


def v_approx(
    S: GroupStructure,
    mats: RecursionMatrices,
    s,
    P: int,
    r: int,
    ctx: PrecisionContext,
    memo: MemoStore | None = None,
    include_truncation: bool = True,
) -> VVector:
    """Truncated recursion sum; with ``include_truncation`` the max-norm truncation
    bound is added to every coordinate so entries enclose the true logs."""
    s = as_fraction(s)
    if memo is None:
        memo = MemoStore()
    memo.claim(S.q, P)
    weights = recursion_weights(S, mats, r, memo)
    work = engine_context(ctx, weights)
    n = S.n_classes
    with work.workprec():
        total = [arb(0)] * n
        for D in sorted(weights):
            gamma = get_gamma(S, s, D, P, work, memo)
            contrib = _apply(weights[D], gamma.entries)
            total = [a + b for a, b in zip(total, contrib)]
        trunc = None
        if include_truncation:
            trunc = fineq_error_bound(n, S.exponent, s, P, r)
            total = [widen(x, trunc) for x in total]
    log.debug("q=%d s=%s P=%d r=%d: %d Gamma vectors cached", S.q, s, P, r, len(memo.gamma_cache))
    return VVector(q=S.q, s=s, P=P, r=r, entries=tuple(total), truncation=trunc)


@dataclass(frozen=True)
class ClassValue:
    residues: tuple[int, ...]
    log_tail: arb
    tail: arb
    full: arb


@dataclass(frozen=True)
class ClassTable:
    """Per-class products for one (q, s, P) run."""

    q: int
    s: Fraction
    P: int
    r: int
    target_decimals: int
    values: tuple[ClassValue, ...]
    n_tuples: int

    @property
    def shortfall(self) -> bool:
        goal = Fraction(1, 10**self.target_decimals)
        return any(radius(v.full) > goal or radius(v.tail) > goal for v in self.values)

    def by_residue(self, a: int) -> ClassValue:
        for v in self.values:
            if a % self.q in v.residues:
                return v
        raise KeyError(a)


def check_supported(q: int, target_decimals: int) -> None:
    if not 3 <= q <= MAX_Q:
        raise UnsupportedError(f"modulus {q} outside the supported range [3, {MAX_Q}]")
    if not 1 <= target_decimals <= MAX_DECIMALS:
        raise UnsupportedError(f"decimals {target_decimals} outside the supported range [1, {MAX_DECIMALS}]")


def finite_class_factor(q: int, residues, s: Fraction, P: int) -> arb:
    """prod_{p < P, p mod q in residues} (1 - p^-s)^-1 at the current precision."""
    wanted = set(residues)
    prod = arb(1)
    minus_s = to_arb(-s)
    for p in primes_up_to(P - 1):
        if p % q in wanted:
            prod /= 1 - to_arb(p) ** minus_s
    return prod


def zeta_classes(
    q: int,
    s,
    target_decimals: int,
    P: int = 100,
    ctx: PrecisionContext | None = None,
    r: int | None = None,
    memo: MemoStore | None = None,
) -> ClassTable:
    """zeta_P(s; q, A) and the full product over all p in A, for every class A."""
    check_supported(q, target_decimals)
    s = as_fraction(s)
    S = build_structure(q)
    mats = recursion_matrices(q)
    if r is None:
        r = choose_r(S.n_classes, S.exponent, s, P, target_decimals)
    n_tuples = len(divisor_tuples(S.exponent, r))
    if ctx is None:
        ctx = PrecisionContext.for_terms(target_decimals, n_tuples * S.n_classes)
    V = v_approx(S, mats, s, P, r, ctx, memo=memo)
    values = []
    with ctx.workprec():
        for A, logv in zip(S.classes, V.entries):
            tail = logv.exp()
            full = tail * finite_class_factor(q, A.elements, s, P)
            values.append(ClassValue(A.elements, logv, tail, full))
    return ClassTable(q, s, P, r, target_decimals, tuple(values), n_tuples)
