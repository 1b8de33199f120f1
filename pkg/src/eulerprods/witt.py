"""Rational Euler products prod_{p in A} F(1/p)/G(1/p) through the Witt
decomposition F(t) = prod_j (1 - t^j)^{b_F(j)}.

The products become prod_{2 <= j <= J} zeta_P(j; q, A | r)^{b_G(j) - b_F(j)}
times an error factor whose logarithm is bounded explicitly.
"""

from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass
from fractions import Fraction

from flint import arb, ctx as flint_ctx, fmpq, fmpq_poly

from .arith import PrecisionContext, divisor_count, divisors, mobius, primes_up_to, radius, to_arb, widen
from .engine import (
    MAX_R,
    ClassValue,
    MemoStore,
    check_supported,
    divisor_tuples,
    v_approx,
)
from .errors import InsufficientParametersError, ParseError, PoleError, PreconditionError
from .group import build_structure
from .matrices import recursion_matrices


@dataclass(frozen=True)
class RealPolynomial:
    """1 + a_1 x + ... + a_d x^d with exact rational coefficients."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = [Fraction(c) for c in self.coefficients]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs or coeffs[0] != 1:
            raise PreconditionError(f"constant term must be 1, got {coeffs[0] if coeffs else 0}")
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def parse(cls, text: str) -> RealPolynomial:
        return cls(parse_polynomial(text))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, k: int) -> Fraction:
        return self.coefficients[k] if k < len(self.coefficients) else Fraction(0)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def to_fmpq_poly(self) -> fmpq_poly:
        return fmpq_poly([fmpq(c.numerator, c.denominator) for c in self.coefficients])

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append((sign, body))
        text = "".join(f"{s}{b}" for s, b in parts)
        return text[1:] if text.startswith("+") else text


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?P<coef>\d+(?:/\d+)?)?\s*
        (?P<star>\*)?\s*
        (?P<var>x(?:\s*(?:\^|\*\*)\s*(?P<pow>\d+))?)?\s*""",
    re.VERBOSE,
)


def parse_polynomial(text: str) -> tuple[Fraction, ...]:
    """Coefficients of expressions like ``1-2*x-7*x^2-4*x^3`` (also ``**`` powers, ``a/b`` coefficients)."""
    if not text or not text.strip():
        raise ParseError("empty polynomial")
    coeffs: dict[int, Fraction] = {}
    pos, first = 0, True
    s = text.strip()
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"cannot parse polynomial {text!r} at position {pos}")
        sign, coef, star, var = m.group("sign"), m.group("coef"), m.group("star"), m.group("var")
        if sign is None and not first:
            raise ParseError(f"missing + or - before term at position {pos} in {text!r}")
        if coef is None and var is None:
            raise ParseError(f"empty term at position {pos} in {text!r}")
        if star and (coef is None or var is None):
            raise ParseError(f"misplaced '*' at position {pos} in {text!r}")
        value = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            value = -value
        k = 0 if var is None else int(m.group("pow") or 1)
        coeffs[k] = coeffs.get(k, Fraction(0)) + value
        pos, first = m.end(), False
    deg = max(coeffs)
    return tuple(coeffs.get(k, Fraction(0)) for k in range(deg + 1))


def power_sums(F: RealPolynomial, K: int) -> list[Fraction]:
    """s_F(1..K): power sums of the inverse roots, by Newton-Girard."""
    s: list[Fraction] = []
    for k in range(1, K + 1):
        acc = k * F.coefficient(k)
        for i in range(1, k):
            acc += F.coefficient(i) * s[k - i - 1]
        s.append(-acc)
    return s


def witt_coefficients(F: RealPolynomial, K: int) -> list[Fraction]:
    """b_F(1..K) with F(t) = prod_j (1 - t^j)^{b_F(j)}."""
    s = power_sums(F, K)
    return [sum((mobius(k // d) * s[d - 1] for d in divisors(k)), Fraction(0)) / k for k in range(1, K + 1)]


@dataclass(frozen=True)
class WittData:
    power_sums: tuple[Fraction, ...]
    witt_exponents: tuple[Fraction, ...]
    beta: Fraction


def witt_data(F: RealPolynomial, K: int, beta: Fraction | None = None) -> WittData:
    if beta is None:
        beta = beta_bound(F, RealPolynomial((1,)))
    return WittData(tuple(power_sums(F, K)), tuple(witt_coefficients(F, K)), Fraction(beta))


def beta_bound(F: RealPolynomial, G: RealPolynomial) -> Fraction:
    """max(2, sum |a_k|, sum |b_k|): bounds every inverse-root modulus of F and G."""
    return max(
        Fraction(2),
        sum((abs(c) for c in F.coefficients[1:]), Fraction(0)),
        sum((abs(c) for c in G.coefficients[1:]), Fraction(0)),
    )


def precbound(n_classes: int, exp_g: int, max_deg: int, beta, P: int, r: int, J: int) -> tuple[arb, arb]:
    """The two summands of the |log I| bound (already multiplied by 2 max(deg F, deg G)).

    First: recursion truncation at depth r over all j >= 2; second: the
    Witt expansion cut at J.
    """
    beta = to_arb(Fraction(beta))
    Pb = to_arb(P)
    with flint_ctx.workprec(128):
        C = (
            to_arb(Fraction(1, 4))
            * (1 + to_arb(Fraction(r - 1, n_classes)))
            * to_arb(Fraction(n_classes * divisor_count(exp_g), 2)) ** (r - 1)
        )
        first = C * beta**2 / Pb ** (2 ** (r + 1)) * (1 + Pb / 2**r) / (1 - beta / Pb**4)
        second = (beta / Pb) ** J * beta / ((1 - beta / Pb) * (J + 1)) * (1 / Pb + to_arb(Fraction(1, J)))
        return 2 * max_deg * first, 2 * max_deg * second


def closed_form_bound(n_classes: int, exp_g: int, max_deg: int, beta, P: int, r: int, J: int) -> arb:
    """Coarser closed-form bound for |log I|; precbound never exceeds it."""
    beta = to_arb(Fraction(beta))
    Pb = to_arb(P)
    with flint_ctx.workprec(128):
        growth = to_arb(Fraction(n_classes * divisor_count(exp_g), 2)) ** (r - 1)
        first = growth * r * beta**2 / Pb ** (2 ** (r + 1)) * (1 + Pb / 2**r)
        second = 4 * beta ** (J + 1) / (J * Pb**J)
        return max_deg * (first + second)


def choose_witt_parameters(
    n_classes: int, exp_g: int, max_deg: int, beta: Fraction, P: int, target_decimals: int
) -> tuple[int, int]:
    """Smallest r making the recursion part <= half the budget, then smallest J >= 3
    making the whole bound <= 10^-(target + 2)."""
    goal = to_arb(Fraction(1, 10 ** (target_decimals + 2)))
    r = next(
        (r for r in range(2, MAX_R + 1) if precbound(n_classes, exp_g, max_deg, beta, P, r, 3)[0] <= goal / 2),
        None,
    )
    if r is None:
        raise InsufficientParametersError(f"no r <= {MAX_R} reaches 10^-{target_decimals} with P={P}; increase P")
    cap = math.ceil(4 * (target_decimals + 2) / math.log10(P / float(beta))) + 64
    for J in range(3, cap + 1):
        first, second = precbound(n_classes, exp_g, max_deg, beta, P, r, J)
        if first + second <= goal:
            return r, J
    raise InsufficientParametersError(f"no J <= {cap} reaches 10^-{target_decimals}; increase P")


@dataclass(frozen=True)
class RationalProductTable:
    q: int
    F: RealPolynomial
    G: RealPolynomial
    P: int
    r: int
    J: int
    beta: Fraction
    target_decimals: int
    log_error: arb
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


def _cancel_common_factor(F: RealPolynomial, G: RealPolynomial) -> tuple[RealPolynomial, RealPolynomial]:
    g = F.to_fmpq_poly().gcd(G.to_fmpq_poly())
    if g.degree() < 1:
        return F, G
    warnings.warn(f"F and G share the factor {g}; cancelling it", stacklevel=4)
    g = g / g(0)

    def _div(H: RealPolynomial) -> RealPolynomial:
        quot = H.to_fmpq_poly() // g
        return RealPolynomial(tuple(Fraction(int(c.p), int(c.q)) for c in quot.coeffs()))

    return _div(F), _div(G)


def check_hypotheses(F: RealPolynomial, G: RealPolynomial) -> None:
    if F.coefficient(1) != G.coefficient(1):
        raise PreconditionError(
            f"linear coefficients differ ({F.coefficient(1)}*x vs {G.coefficient(1)}*x); "
            "(F - G)/x^2 must be a polynomial"
        )


def prepare_inputs(
    F: RealPolynomial | str, G: RealPolynomial | str, P_init: int
) -> tuple[RealPolynomial, RealPolynomial, Fraction, int]:
    """Parse, check, cancel common factors; return (F, G, beta, P) with P >= 2 beta."""
    if isinstance(F, str):
        F = RealPolynomial.parse(F)
    if isinstance(G, str):
        G = RealPolynomial.parse(G)
    check_hypotheses(F, G)
    F, G = _cancel_common_factor(F, G)
    beta = beta_bound(F, G)
    return F, G, beta, max(P_init, math.ceil(2 * beta))


def euler_products_rational(
    q: int,
    F: RealPolynomial | str,
    G: RealPolynomial | str,
    target_decimals: int,
    P_init: int = 100,
    ctx: PrecisionContext | None = None,
    memo: MemoStore | None = None,
) -> RationalProductTable:
    """prod_{p in A} F(1/p)/G(1/p) for every lattice-invariant class A mod q."""
    check_supported(q, target_decimals)
    F, G, beta, P = prepare_inputs(F, G, P_init)
    S = build_structure(q)
    mats = recursion_matrices(q)
    max_deg = max(F.degree, G.degree, 1)

    for p in primes_up_to(P - 1):
        if q % p and G(Fraction(1, p)) == 0:
            raise PoleError(f"G(1/{p}) = 0 for the prime {p} (class {p % q} mod {q})")

    r, J = choose_witt_parameters(S.n_classes, S.exponent, max_deg, beta, P, target_decimals)
    bF, bG = witt_coefficients(F, J), witt_coefficients(G, J)
    assert bF[0] == bG[0], "j = 1 exponents must cancel"
    exponents = {j: bG[j - 1] - bF[j - 1] for j in range(2, J + 1)}

    n_tuples = len(divisor_tuples(S.exponent, r))
    if ctx is None:
        ctx = PrecisionContext.for_terms(target_decimals, n_tuples * S.n_classes * J)
    work = ctx.with_decimals(math.ceil(J * math.log10(float(beta))))
    if memo is None:
        memo = MemoStore()

    first, second = precbound(S.n_classes, S.exponent, max_deg, beta, P, r, J)
    log_error = first + second
    n = S.n_classes
    with work.workprec():
        logs = [arb(0)] * n
        for j, c in exponents.items():
            if c == 0:
                continue
            V = v_approx(S, mats, j, P, r, work, memo=memo, include_truncation=False)
            cb = arb(fmpq(c.numerator, c.denominator))
            logs = [acc + cb * v for acc, v in zip(logs, V.entries)]
        values = []
        for A, lg in zip(S.classes, logs):
            lg = widen(lg, log_error)
            tail = lg.exp()
            finite = Fraction(1)
            for p in primes_up_to(P - 1):
                if p % q in A.elements:
                    x = Fraction(1, p)
                    finite *= F(x) / G(x)
            full = tail * to_arb(finite)
            values.append(ClassValue(A.elements, lg, tail, full))
    return RationalProductTable(q, F, G, P, r, J, beta, target_decimals, log_error, tuple(values), n_tuples)
