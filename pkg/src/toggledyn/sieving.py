"""Exact q-analogue arithmetic and cyclic sieving verification.

All polynomial arithmetic is over the integers.  Root-of-unity evaluation is
exact-first: exponents are reduced mod omega, the coefficient classes are
collapsed onto a primitive m-th root (m = omega/gcd(k, omega)), and the class
polynomial is reduced modulo the m-th cyclotomic polynomial; the remainder
must be a constant, which is the value.  A floating-point evaluation path is
kept for cross-checking (tolerance 1e-6) and reporting only — no sieving
verdict ever hinges on rounding.
"""

from __future__ import annotations

import cmath
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial, gcd

from .dynamics import OrbitCensus

FLOAT_TOLERANCE = 1e-6


class NonIntegralEvaluationError(ArithmeticError):
    """A root-of-unity evaluation failed to be a rational integer."""


@dataclass(frozen=True)
class QPolynomial:
    """Integer-coefficient polynomial in q; index = exponent, normalized with
    no trailing zeros."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        cs = list(self.coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(int(c) for c in cs))

    @classmethod
    def of(cls, *coeffs) -> "QPolynomial":
        return cls(tuple(coeffs))

    @classmethod
    def constant(cls, c: int) -> "QPolynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "QPolynomial":
        return cls((0,) * e + (c,))

    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPolynomial(tuple(out))

    def __sub__(self, other: "QPolynomial") -> "QPolynomial":
        return self + other.scale(-1)

    def __mul__(self, other: "QPolynomial") -> "QPolynomial":
        if self.is_zero() or other.is_zero():
            return QPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPolynomial(tuple(out))

    def scale(self, c: int) -> "QPolynomial":
        return QPolynomial(tuple(c * a for a in self.coeffs))

    def scale_rational(self, chi: Fraction) -> "QPolynomial":
        """Multiply by a rational; every resulting coefficient must be an
        integer."""
        chi = Fraction(chi)
        out = []
        for a in self.coeffs:
            v = a * chi
            if v.denominator != 1:
                raise NonIntegralEvaluationError(
                    f"coefficient {a} * {chi} is not an integer")
            out.append(int(v))
        return QPolynomial(tuple(out))

    def divmod_exact(self, divisor: "QPolynomial") -> tuple["QPolynomial", "QPolynomial"]:
        """Polynomial long division over Z; requires the divisor to be monic
        or to divide each leading step exactly."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        dc = divisor.coeffs
        quot = [0] * max(0, len(rem) - len(dc) + 1)
        for top in range(len(rem) - 1, len(dc) - 2, -1):
            if rem[top] == 0:
                continue
            lead, remainder = divmod(rem[top], dc[-1])
            if remainder != 0:
                raise ArithmeticError("non-exact leading division over Z")
            shift = top - (len(dc) - 1)
            quot[shift] = lead
            for i, c in enumerate(dc):
                rem[shift + i] -= lead * c
        return QPolynomial(tuple(quot)), QPolynomial(tuple(rem))

    def divide_exact(self, divisor: "QPolynomial") -> "QPolynomial":
        q, r = self.divmod_exact(divisor)
        if not r.is_zero():
            raise ArithmeticError(f"nonzero remainder {r.coeffs} in exact division")
        return q

    def substitute_power(self, m: int) -> "QPolynomial":
        """q -> q^m."""
        if m < 1:
            raise ValueError("substitution power must be >= 1")
        out = [0] * (len(self.coeffs) * m)
        for e, c in enumerate(self.coeffs):
            out[e * m] = c
        return QPolynomial(tuple(out))

    def eval_int(self, x: int) -> int:
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def eval_complex(self, z: complex) -> complex:
        out = 0j
        for c in reversed(self.coeffs):
            out = out * z + c
        return out

    def to_json(self) -> list[int]:
        return list(self.coeffs)


ONE = QPolynomial((1,))


def q_int(k: int) -> QPolynomial:
    """[k]_q = 1 + q + ... + q^{k-1}."""
    if k < 0:
        raise ValueError("q-integer needs k >= 0")
    return QPolynomial((1,) * k)


def q_factorial(k: int) -> QPolynomial:
    out = ONE
    for j in range(1, k + 1):
        out = out * q_int(j)
    return out


def q_binomial(k: int, r: int) -> QPolynomial:
    """[k choose r]_q via exact division of q-factorials; a nonzero remainder
    signals an arithmetic bug, not an expected path."""
    if not 0 <= r <= k:
        raise ValueError("q-binomial needs 0 <= r <= k")
    return q_factorial(k).divide_exact(q_factorial(r) * q_factorial(k - r))


# ---------------------------------------------------------------------------
# cyclotomic polynomials and exact evaluation at roots of unity

_cyclotomic_cache: dict[int, QPolynomial] = {}


def cyclotomic(m: int) -> QPolynomial:
    """The m-th cyclotomic polynomial, via x^m - 1 = prod_{d | m} Phi_d."""
    if m in _cyclotomic_cache:
        return _cyclotomic_cache[m]
    num = QPolynomial.monomial(m) - ONE
    for d in range(1, m):
        if m % d == 0:
            num = num.divide_exact(cyclotomic(d))
    _cyclotomic_cache[m] = num
    return num


def eval_at_root(P: QPolynomial, k: int, omega: int) -> int:
    """Evaluate P at e^{2 pi i k / omega} exactly.

    Exponents are reduced mod omega; the resulting class polynomial is pushed
    onto a primitive m-th root (m = omega / gcd(k, omega)) and reduced mod the
    m-th cyclotomic polynomial.  A non-constant remainder means the value is
    irrational: that signals a false sieving candidate (or a bug) and raises.
    """
    if omega < 1:
        raise ValueError("omega must be positive")
    classes = [0] * omega
    for e, c in enumerate(P.coeffs):
        classes[e % omega] += c
    k %= omega
    if k == 0:
        return sum(classes)
    g = gcd(k, omega)
    m = omega // g
    step = k // g  # coprime to m
    collapsed = [0] * m
    for j, c in enumerate(classes):
        collapsed[(j * step) % m] += c
    _, rem = QPolynomial(tuple(collapsed)).divmod_exact(cyclotomic(m))
    if rem.degree() > 0:
        raise NonIntegralEvaluationError(
            f"evaluation at k={k}, omega={omega} is irrational: {rem.coeffs}")
    return rem.coeffs[0] if rem.coeffs else 0


def eval_at_root_float(P: QPolynomial, k: int, omega: int) -> complex:
    return P.eval_complex(cmath.exp(2j * cmath.pi * k / omega))


# ---------------------------------------------------------------------------
# cyclic sieving verification

@dataclass
class CSPReport:
    omega: int
    rows: list  # {k, fixed_from_census, poly_value, match}
    orbit_count: int
    burnside_ok: bool

    @property
    def ok(self) -> bool:
        return self.burnside_ok and all(row["match"] for row in self.rows)

    def mismatches(self) -> list:
        return [row for row in self.rows if not row["match"]]

    def to_json(self) -> dict:
        return {
            "omega": self.omega,
            "rows": self.rows,
            "orbit_count": self.orbit_count,
            "burnside_ok": self.burnside_ok,
            "ok": self.ok,
        }


def fixed_point_count(sizes: Counter, k: int) -> int:
    """Number of points fixed by f^k, from the orbit-size multiset."""
    return sum(s * m for s, m in sizes.items() if k % s == 0)


def csp_verify(census: OrbitCensus, P: QPolynomial) -> CSPReport:
    """Compare census-derived fixed-point counts of f^k with exact
    evaluations of P at e^{2 pi i k / omega} for k = 0..omega-1.  Mismatches
    are reported, not raised.  Also checks the Burnside consistency
    (1/omega) sum_k Fix(f^k) = number of orbits."""
    omega = census.order
    rows = []
    fix_total = 0
    for k in range(omega):
        fixed = fixed_point_count(census.sizes, k)
        fix_total += fixed
        try:
            value = eval_at_root(P, k, omega)
        except NonIntegralEvaluationError:
            value = None
        approx = eval_at_root_float(P, k, omega)
        if value is not None and abs(approx - value) > FLOAT_TOLERANCE:
            raise NonIntegralEvaluationError(
                f"float/exact disagreement at k={k}: {approx} vs {value}")
        rows.append({
            "k": k,
            "fixed_from_census": fixed,
            "poly_value": value,
            "match": value == fixed,
        })
    n_orbits = sum(census.sizes.values())
    burnside_ok = fix_total == omega * n_orbits
    return CSPReport(omega, rows, n_orbits, burnside_ok)


def csp_compose(census: OrbitCensus, F: QPolynomial, N: int,
                chi) -> tuple[Counter, QPolynomial]:
    """Given f with orbit sizes {k_i^{m_i}} satisfying CSP with F, predict the
    census and sieving polynomial of a map g with sizes {(N k_i)^{chi m_i}}:
    g has order N*omega and polynomial chi [N]_{q^omega} F(q)."""
    chi = Fraction(chi)
    predicted: Counter = Counter()
    for s, m in census.sizes.items():
        mult = chi * m
        if mult.denominator != 1:
            raise ValueError(f"non-integer multiplicity {mult} for size {N * s}")
        predicted[N * s] += int(mult)
    poly = (q_int(N).substitute_power(census.order) * F).scale_rational(chi)
    return predicted, poly


# ---------------------------------------------------------------------------
# compositions of n with d parts, under rotation

def compositions(n: int, d: int):
    """All d-part compositions of n, lexicographically."""
    if not 1 <= d <= n:
        raise ValueError("need 1 <= d <= n")
    for cuts in combinations(range(1, n), d - 1):
        prev = 0
        parts = []
        for c in cuts:
            parts.append(c - prev)
            prev = c
        parts.append(n - prev)
        yield tuple(parts)


def rot(c: tuple) -> tuple:
    """Rot(a_1, ..., a_d) = (a_2, ..., a_d, a_1)."""
    return c[1:] + c[:1]


def rot_orbit(c: tuple) -> frozenset:
    orbit = {c}
    cur = rot(c)
    while cur != c:
        orbit.add(cur)
        cur = rot(cur)
    return frozenset(orbit)


def rot_census(n: int, d: int) -> OrbitCensus:
    """Census of Rot_{n,d} over all C(n-1, d-1) compositions."""
    sizes: Counter = Counter()
    reps = []
    seen = set()
    total = 0
    for c in compositions(n, d):
        total += 1
        if c in seen:
            continue
        orbit = [c]
        cur = rot(c)
        while cur != c:
            orbit.append(cur)
            cur = rot(cur)
        seen.update(orbit)
        sizes[len(orbit)] += 1
        reps.append(min(orbit))
    return OrbitCensus(n, f"rot[{n},{d}]", sizes, reps, total)


# ---------------------------------------------------------------------------
# the sieving polynomials attached to promotion-family censuses

def main_sieving_polynomial(n: int, d: int) -> QPolynomial:
    """n (d-1)! (n-d-1)! [n-d]_{q^d} C(n-1, d-1)_q."""
    pre = n * factorial(d - 1) * factorial(n - d - 1)
    return (q_int(n - d).substitute_power(d) * q_binomial(n - 1, d - 1)).scale(pre)


def broken_initial_sieving_polynomial(n: int, d: int) -> QPolynomial:
    """(d-1)! (n-d-1)! [n]_{q^{n-d}} [n-d]_{q^d} C(n-1, d-1)_q."""
    pre = factorial(d - 1) * factorial(n - d - 1)
    return (q_int(n).substitute_power(n - d)
            * q_int(n - d).substitute_power(d)
            * q_binomial(n - 1, d - 1)).scale(pre)


def broken_spread_sieving_polynomial(n: int, d: int) -> QPolynomial:
    """(d-1)! (n-d-1)! [n]_{q^d} [n-d]_{q^d} C(n-1, d-1)_q."""
    pre = factorial(d - 1) * factorial(n - d - 1)
    return (q_int(n).substitute_power(d)
            * q_int(n - d).substitute_power(d)
            * q_binomial(n - 1, d - 1)).scale(pre)
