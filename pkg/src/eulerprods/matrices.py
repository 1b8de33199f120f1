"""Exact recursion matrices over the cyclic-subgroup / class index sets.

Rows and columns follow the ordering of ``GroupStructure.subgroups`` (and the
aligned ``classes``). Entries are exact: ``fmpq_mat`` / ``fmpz_mat``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from flint import fmpq, fmpq_mat, fmpz_mat

from .arith import divisors, mobius
from .errors import DomainError
from .group import CyclicSubgroup, GroupStructure, build_structure


def lattice_mobius(K: CyclicSubgroup, B: CyclicSubgroup) -> int:
    """Moebius function of the cyclic-subgroup lattice: mu(|B/K|)."""
    if not K.issubset(B):
        raise DomainError("lattice_mobius(K, B) needs K contained in B")
    return mobius(B.order // K.order)


def _check_d(S: GroupStructure, d: int) -> None:
    if d <= 1 or S.exponent % d:
        raise DomainError(f"d must be a divisor > 1 of exp G = {S.exponent}, got {d}")


@lru_cache(maxsize=64)
def _product_orders(q: int) -> tuple[tuple[int, ...], ...]:
    """|H_i H_j| for every pair of cyclic subgroups (the product may be non-cyclic)."""
    S = build_structure(q)
    sets = [frozenset(H.elements) for H in S.subgroups]
    return tuple(tuple(len({a * b % q for a in Hi for b in Hj}) for Hj in sets) for Hi in sets)


def build_m1(S: GroupStructure) -> fmpq_mat:
    n, phi = S.n_classes, S.phi
    M = fmpq_mat(n, n)
    for i, G0 in enumerate(S.subgroups):
        for j, A in enumerate(S.classes):
            if S.subgroups[A.generated_subgroup].issubset(G0):
                M[i, j] = phi // G0.order
    return M


def build_m1_inverse(S: GroupStructure) -> fmpq_mat:
    """Closed-form inverse of M1 via the lattice Moebius function."""
    n, phi = S.n_classes, S.phi
    M = fmpq_mat(n, n)
    for i, A in enumerate(S.classes):
        B = S.subgroups[A.generated_subgroup]
        for j, K in enumerate(S.subgroups):
            if K.issubset(B):
                M[i, j] = fmpq(lattice_mobius(K, B) * K.order, phi)
    return M


def build_m_d(S: GroupStructure, d: int) -> fmpq_mat:
    _check_d(S, d)
    n, phi = S.n_classes, S.phi
    orders = _product_orders(S.q)
    M = fmpq_mat(n, n)
    for i, G0 in enumerate(S.subgroups):
        for j, A in enumerate(S.classes):
            prod = orders[A.generated_subgroup][i]
            if prod == d * G0.order:
                M[i, j] = phi // prod
    return M


def build_n_d(S: GroupStructure, d: int) -> fmpz_mat:
    """N_d from the subgroup sum, using |K B1 / K| = |B1| / |K n B1|."""
    _check_d(S, d)
    n = S.n_classes
    subs = S.subgroups
    sets = [frozenset(H.elements) for H in subs]
    N = fmpz_mat(n, n)
    for i, B0 in enumerate(subs):
        inside = [k for k in range(n) if sets[k] <= sets[i]]
        for j, B1 in enumerate(subs):
            total = 0
            for k in inside:
                if B1.order == d * len(sets[k] & sets[j]):
                    total += mobius(B0.order // subs[k].order)
            N[i, j] = total
    return N


@dataclass(frozen=True)
class RecursionMatrices:
    m1: fmpq_mat
    m1_inverse: fmpq_mat
    nd: dict[int, fmpz_mat]

    @property
    def steps(self) -> list[int]:
        return sorted(self.nd)


@lru_cache(maxsize=64)
def recursion_matrices(q: int) -> RecursionMatrices:
    S = build_structure(q)
    return RecursionMatrices(
        m1=build_m1(S),
        m1_inverse=build_m1_inverse(S),
        nd={d: build_n_d(S, d) for d in divisors(S.exponent) if d > 1},
    )


def max_abs_entry(M) -> int | fmpq:
    return max((abs(x) for x in M.entries()), default=0)
