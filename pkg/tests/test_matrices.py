import random
from fractions import Fraction

import pytest
from flint import arb, fmpq, fmpq_mat, fmpz_mat

from eulerprods.arith import PrecisionContext, divisors
from eulerprods.errors import DomainError
from eulerprods.group import build_structure
from eulerprods.lfunc import gamma_vector
from eulerprods.matrices import (
    build_m1,
    build_m1_inverse,
    build_m_d,
    build_n_d,
    lattice_mobius,
    max_abs_entry,
    recursion_matrices,
)
from eulerprods.oracle import enclose, zeta_class_truncated

from reference_values import MOD7_M, MOD7_M1, MOD7_M1_INVERSE, MOD7_N_FROM_M, MOD7_N_PRINTED


def _rows(M):
    return [[M[i, j] for j in range(M.ncols())] for i in range(M.nrows())]


def _identity(n):
    return fmpq_mat(n, n, [int(i == j) for i in range(n) for j in range(n)])


def test_mod7_m1_and_inverse():
    S = build_structure(7)
    assert _rows(build_m1(S)) == MOD7_M1
    inv = build_m1_inverse(S)
    assert _rows(inv) == [[fmpq(*map(int, Fraction(x).as_integer_ratio())) for x in row] for row in MOD7_M1_INVERSE]
    assert inv * build_m1(S) == _identity(4)


def test_m1_small_cases():
    assert _rows(build_m1(build_structure(3))) == [[2, 0], [1, 1]]
    for q in (5, 9, 11, 12, 15, 16, 21, 25):
        S = build_structure(q)
        M = build_m1(S)
        if S.subgroups[-1].order == S.phi:
            # G cyclic: its row is all ones
            assert _rows(M)[-1] == [1] * S.n_classes
        assert _rows(build_m1_inverse(S))[0] == [fmpq(1, S.phi)] + [0] * (S.n_classes - 1)
        # lower triangular with positive diagonal under the ordering by order
        for i in range(S.n_classes):
            assert M[i, i] == S.phi // S.subgroups[i].order
            assert all(M[i, j] == 0 for j in range(i + 1, S.n_classes))


@pytest.mark.parametrize("d", [2, 3, 6])
def test_mod7_m_d(d):
    assert _rows(build_m_d(build_structure(7), d)) == MOD7_M[d]


@pytest.mark.parametrize("d", [2, 3, 6])
def test_mod7_n_d_equals_defining_route(d):
    S = build_structure(7)
    assert _rows(build_n_d(S, d)) == MOD7_N_FROM_M[d]


@pytest.mark.parametrize("d", [2, 3, 6])
def test_mod7_printed_n_d_is_inconsistent_with_printed_m(d):
    # the printed N_d fail M1 N_d = d M_d, the identity that defines them
    M1 = fmpq_mat(MOD7_M1)
    assert M1 * fmpq_mat(MOD7_N_PRINTED[d]) != d * fmpq_mat(MOD7_M[d])
    assert M1 * fmpq_mat(MOD7_N_FROM_M[d]) == d * fmpq_mat(MOD7_M[d])


def test_lattice_mobius():
    S = build_structure(7)
    H = S.subgroups
    assert lattice_mobius(H[0], H[1]) == -1
    assert lattice_mobius(H[2], H[2]) == 1
    assert lattice_mobius(H[0], H[3]) == 1
    with pytest.raises(DomainError):
        lattice_mobius(H[1], H[2])


def test_bad_d_rejected():
    S = build_structure(7)
    for d in (1, 4, 5):
        with pytest.raises(DomainError):
            build_m_d(S, d)
        with pytest.raises(DomainError):
            build_n_d(S, d)


@pytest.mark.parametrize("q", range(3, 101))
def test_two_routes_and_inverse(q):
    S = build_structure(q)
    m1, inv = build_m1(S), build_m1_inverse(S)
    assert m1 * inv == _identity(S.n_classes)
    for d in divisors(S.exponent):
        if d == 1:
            continue
        N = build_n_d(S, d)
        assert isinstance(N, fmpz_mat)
        assert fmpq_mat(N) == d * inv * build_m_d(S, d)


@pytest.mark.parametrize("q", [3, 5, 7, 8, 9, 12, 13, 15, 16, 21, 24, 35, 48, 50])
def test_product_entry_bound(q):
    S = build_structure(q)
    mats = recursion_matrices(q)
    rng = random.Random(q)
    steps = mats.steps
    for _ in range(20):
        v = rng.randint(1, 4)
        tup = [rng.choice(steps) for _ in range(v)]
        prod = fmpz_mat(mats.nd[tup[0]])
        for d in tup[1:]:
            prod = prod * mats.nd[d]
        assert max_abs_entry(prod) <= S.n_classes ** (v - 1)


def test_gamma_relation_against_oracle():
    # Gamma_s(1) = M1 V_s(1) + sum_d M_d V_s(d), with V from direct truncation
    q, s, P, limit = 7, 2, 100, 200_000
    S = build_structure(q)
    ctx = PrecisionContext(25)
    gamma = gamma_vector(S, s, 1, P, ctx)
    terms = {1: build_m1(S)}
    terms.update({d: build_m_d(S, d) for d in divisors(S.exponent) if d > 1})
    with ctx.workprec():
        total = [arb(0)] * S.n_classes
        for d, M in terms.items():
            V = []
            for A in S.classes:
                v, tail = zeta_class_truncated(q, d * s, A.elements, P, limit, ctx)
                V.append(enclose(v, tail, one_sided=True).log())
            for i in range(S.n_classes):
                total[i] += sum((arb(fmpq(M[i, j])) * V[j] for j in range(S.n_classes)), arb(0))
    for g, t in zip(gamma.entries, total):
        assert g.overlaps(t)
        assert t.rad() < 1e-4
