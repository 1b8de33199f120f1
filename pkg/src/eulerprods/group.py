"""Structure of G = (Z/qZ)^x: cyclic subgroups, lattice-invariant classes,
characters with exact root-of-unity exponents, annihilators, counting formulas."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .arith import divisors, euler_phi, factorize, mobius
from .errors import DomainError


@dataclass(frozen=True)
class CyclicSubgroup:
    elements: tuple[int, ...]
    generator: int

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, a: int) -> bool:
        return a in self._set

    @cached_property
    def _set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def issubset(self, other: CyclicSubgroup) -> bool:
        return self._set <= other._set


@dataclass(frozen=True)
class LatticeClass:
    """Generators of one cyclic subgroup; ``generated_subgroup`` indexes ``GroupStructure.subgroups``."""

    elements: tuple[int, ...]
    generated_subgroup: int


@dataclass(frozen=True)
class DirichletCharacter:
    """chi(a) = exp(2 pi i e(a) / exponent); ``table[a % q]`` is e(a), or None when gcd(a, q) > 1."""

    modulus: int
    exponent: int
    table: tuple[int | None, ...]
    label: tuple[int, ...] = ()

    def exponent_of(self, a: int) -> int | None:
        return self.table[a % self.modulus]

    @property
    def exponent_map(self) -> dict[int, int]:
        return {a: e for a, e in enumerate(self.table) if e is not None}

    @property
    def is_principal(self) -> bool:
        return all(e in (None, 0) for e in self.table)

    @property
    def is_real(self) -> bool:
        half = self.exponent // 2 if self.exponent % 2 == 0 else None
        return all(e is None or e == 0 or e == half for e in self.table)

    def value(self, a: int) -> complex:
        """Floating-point value, for display and debugging only."""
        e = self.exponent_of(a)
        if e is None:
            return 0j
        return complex(math.cos(2 * math.pi * e / self.exponent), math.sin(2 * math.pi * e / self.exponent))


def primitive_root(m: int) -> int:
    """Smallest generator of the cyclic group (Z/mZ)^x (m = 2, 4, p^a, 2p^a)."""
    if m in (1, 2):
        return 1
    phi = euler_phi(m)
    primes = [p for p, _ in factorize(phi)]
    for g in range(2, m):
        if math.gcd(g, m) != 1:
            continue
        if all(pow(g, phi // p, m) != 1 for p in primes):
            return g
    raise DomainError(f"(Z/{m}Z)^x is not cyclic")


def _crt_lift(g: int, m: int, q: int) -> int:
    """x = g mod m, x = 1 mod q/m (coprime parts)."""
    rest = q // m
    if rest == 1:
        return g % q
    # x = 1 + rest * t with rest * t = g - 1 mod m
    t = (g - 1) * pow(rest, -1, m) % m
    return (1 + rest * t) % q


def cyclic_factors(q: int) -> list[tuple[int, int]]:
    """Generators and orders (g, n) with G = prod <g>, each <g> cyclic of order n."""
    out = []
    for p, a in factorize(q):
        m = p**a
        if p == 2:
            if a == 2:
                out.append((_crt_lift(m - 1, m, q), 2))
            elif a >= 3:
                out.append((_crt_lift(m - 1, m, q), 2))
                out.append((_crt_lift(5, m, q), 2 ** (a - 2)))
        else:
            out.append((_crt_lift(primitive_root(m), m, q), euler_phi(m)))
    return out


def units_of(q: int) -> list[int]:
    return [a for a in range(1, q) if math.gcd(a, q) == 1] if q > 1 else [0]


def _order(a: int, q: int) -> int:
    x, n = a % q, 1
    while x != 1 % q:
        x = x * a % q
        n += 1
    return n


def enumerate_cyclic_subgroups(q: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Direct enumeration: each cyclic subgroup with its generator set, unsorted.

    Walks each not-yet-seen unit's powers once and marks all generators of the
    resulting cyclic group, so the work is the sum of the subgroup orders.
    """
    seen = set()
    found = []
    for a in units_of(q):
        if a in seen:
            continue
        powers = [1 % q]
        x = a % q
        while x != 1 % q:
            powers.append(x)
            x = x * a % q
        n = len(powers)
        gens = tuple(sorted(powers[k] for k in range(n) if math.gcd(k, n) == 1))
        seen.update(gens)
        found.append((tuple(sorted(powers)), gens))
    return found


@dataclass(frozen=True)
class GroupStructure:
    q: int
    units: tuple[int, ...]
    exponent: int
    subgroups: tuple[CyclicSubgroup, ...]
    classes: tuple[LatticeClass, ...]
    factors: tuple[tuple[int, int], ...]

    @property
    def phi(self) -> int:
        return len(self.units)

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    @cached_property
    def discrete_logs(self) -> dict[int, tuple[int, ...]]:
        """Unit -> exponent vector on ``factors``."""
        logs = {}
        ranges = [range(n) for _, n in self.factors]
        for ks in itertools.product(*ranges):
            x = 1 % self.q
            for (g, _), k in zip(self.factors, ks):
                x = x * pow(g, k, self.q) % self.q
            logs[x] = ks
        return logs

    @cached_property
    def characters(self) -> tuple[DirichletCharacter, ...]:
        """All phi(q) characters, lexicographic on exponent tuples (principal first)."""
        E = self.exponent
        out = []
        logs = self.discrete_logs
        for cs in itertools.product(*[range(n) for _, n in self.factors]):
            weights = [c * (E // n) for c, (_, n) in zip(cs, self.factors)]
            table: list[int | None] = [None] * self.q
            for a, ks in logs.items():
                table[a] = sum(w * k for w, k in zip(weights, ks)) % E
            out.append(DirichletCharacter(self.q, E, tuple(table), tuple(cs)))
        return tuple(out)

    @cached_property
    def annihilators(self) -> tuple[tuple[int, ...], ...]:
        """For each subgroup, indices of the characters trivial on it."""
        chars = self.characters
        return tuple(
            tuple(i for i, chi in enumerate(chars) if chi.table[H.generator] == 0) for H in self.subgroups
        )

    @cached_property
    def conjugate_index(self) -> tuple[int, ...]:
        position = {chi.label: i for i, chi in enumerate(self.characters)}
        return tuple(
            position[tuple((-c) % n for c, (_, n) in zip(chi.label, self.factors))] for chi in self.characters
        )

    @cached_property
    def subgroup_index(self) -> dict[frozenset[int], int]:
        return {frozenset(H.elements): i for i, H in enumerate(self.subgroups)}

    @cached_property
    def class_of_residue(self) -> dict[int, int]:
        return {a: i for i, A in enumerate(self.classes) for a in A.elements}

    def generated(self, elements) -> int:
        """Index of the (cyclic) subgroup generated by ``elements``; raises if not cyclic."""
        gens = {e % self.q for e in elements}
        H = {1 % self.q}
        stack = [1 % self.q]
        while stack:
            h = stack.pop()
            for g in gens:
                x = h * g % self.q
                if x not in H:
                    H.add(x)
                    stack.append(x)
        key = frozenset(H)
        if key not in self.subgroup_index:
            raise DomainError(f"subgroup generated by {sorted(elements)} is not cyclic")
        return self.subgroup_index[key]


def _subgroup_key(elements: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    return len(elements), elements


@lru_cache(maxsize=64)
def build_structure(q: int) -> GroupStructure:
    if q < 3:
        raise DomainError(f"modulus must be >= 3, got {q}")
    found = sorted(enumerate_cyclic_subgroups(q), key=lambda pair: _subgroup_key(pair[0]))
    subgroups = tuple(CyclicSubgroup(elems, gens[0]) for elems, gens in found)
    classes = tuple(LatticeClass(gens, i) for i, (_, gens) in enumerate(found))
    exponent = max(H.order for H in subgroups)
    return GroupStructure(
        q=q,
        units=tuple(units_of(q)),
        exponent=exponent,
        subgroups=subgroups,
        classes=classes,
        factors=tuple(cyclic_factors(q)),
    )


# ---------------------------------------------------------------------------
# Counting


def rho(q: int, d: int) -> int:
    """Number of solutions of x^d = 1 mod q, by the multiplicative prime-power formula."""
    if q < 1 or d < 1:
        raise DomainError("rho needs q, d >= 1")
    out = 1
    for p, a in factorize(q) if q > 1 else ():
        if p != 2:
            out *= math.gcd(d, p ** (a - 1) * (p - 1))
        elif a == 1 or d % 2:
            out *= 1
        else:
            out *= 2 * math.gcd(d, 2 ** (a - 2))
    return out


def rho_star(q: int, d: int) -> int:
    """Number of units of exact order d."""
    if q < 1 or d < 1:
        raise DomainError("rho_star needs q, d >= 1")
    return sum(mobius(d // l) * rho(q, l) for l in divisors(d))


def count_cyclic_subgroups(q: int) -> int:
    """|cyclic subgroups of (Z/qZ)^x| via the closed multiplicative-sum formula."""
    if q < 3:
        raise DomainError(f"modulus must be >= 3, got {q}")
    phi = euler_phi(q)
    odd_primes = [p for p, _ in factorize(phi) if p != 2]
    front = Fraction(1)
    for p in odd_primes:
        front *= Fraction(p - 2, p - 1)
    total = Fraction(0)
    for d in divisors(phi):
        if d % 2:
            continue
        term = Fraction(rho(q, d), euler_phi(d))
        co = phi // d
        for p, _ in factorize(d):
            if p == 2:
                if co % 2 == 0:
                    term /= 2
            elif co % p == 0:
                term *= Fraction((p - 1) ** 2, p * (p - 2))
            else:
                term *= Fraction(p - 1, p - 2)
        total += term
    value = front * total
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral subgroup count {value} for q={q}")
    return int(value)


def count_cyclic_subgroups_by_orders(q: int) -> int:
    """Sum over d | phi(q) of rho*(q, d) / phi(d)."""
    phi = euler_phi(q)
    total = sum(Fraction(rho_star(q, d), euler_phi(d)) for d in divisors(phi))
    assert total.denominator == 1
    return int(total)


def count_cyclic_subgroups_direct(q: int) -> int:
    return len(enumerate_cyclic_subgroups(q))
