"""The symmetric tridiagonal families M_n(a) and N_n(a).

Both have ``a`` on the diagonal and ones on the two off-diagonals; M_n(a)
differs from N_n(a) only in its last diagonal entry, which is ``a - 1``.
Their determinants obey ``d(n) = a d(n-1) - d(n-2)``; the characteristic
polynomial of M_n(2) is the M-determinant evaluated at ``a = 2 - x``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Union

from .algebraic_numbers import RatPolynomial, format_rational, minpoly_of_shifted_cos
from .errors import ContractError, DomainError
from .exact_linalg import IntMatrix

Variant = Literal["M", "N"]

NEG_TWO_ERRATUM = (
    "for a = -2 the recurrence f(n) = a f(n-1) - f(n-2) with f(1) = -3, f(2) = 5 "
    "gives det M_n(-2) = (-1)^n (2n+1); the often-quoted sign (-1)^(n-1) for this case "
    "is off by a factor of -1"
)


@dataclass(frozen=True)
class TridiagSpec:
    n: int
    a: Union[int, Fraction]
    variant: Variant = "M"

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"n must be an integer >= 1, got {self.n!r}")
        if self.variant not in ("M", "N"):
            raise ContractError(f"variant must be 'M' or 'N', got {self.variant!r}")
        object.__setattr__(self, "a", Fraction(self.a))


def make_matrix(spec: TridiagSpec) -> IntMatrix:
    if spec.a.denominator != 1:
        raise ContractError("matrix construction needs an integer a")
    n, a = spec.n, spec.a.numerator
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = a
        if i + 1 < n:
            rows[i][i + 1] = rows[i + 1][i] = 1
    if spec.variant == "M":
        rows[n - 1][n - 1] = a - 1
    return IntMatrix.from_rows(rows)


def _three_term(first, second, a, n):
    if n == 1:
        return first
    prev, cur = first, second
    for _ in range(n - 2):
        prev, cur = cur, a * cur - prev
    return cur


def det_recurrence(spec: TridiagSpec) -> Fraction:
    """Determinant by the three-term recurrence (first-column expansion)."""
    a = spec.a
    if spec.variant == "M":
        return _three_term(a - 1, a * a - a - 1, a, spec.n)
    return _three_term(a, a * a - 1, a, spec.n)


@dataclass(frozen=True)
class ClosedFormReport:
    spec: TridiagSpec
    case: str
    value: Fraction
    erratum: str | None = None

    def to_dict(self) -> dict:
        d = {"n": self.spec.n, "a": format_rational(self.spec.a),
             "variant": self.spec.variant, "case": self.case,
             "det": format_rational(self.value)}
        if self.erratum:
            d["erratum"] = self.erratum
        return d


def _power_sums(a, count):
    # s_j = alpha^j + beta^j for the roots of x^2 - a x + 1: s_0 = 2, s_1 = a
    s = [Fraction(2), a]
    while len(s) < count:
        s.append(a * s[-1] - s[-2])
    return s


def det_closed_form(spec: TridiagSpec) -> ClosedFormReport:
    """Closed-form determinant, with the case that produced it.

    For ``a != +-2`` the alpha/beta expression is evaluated through the power
    sums ``alpha^j + beta^j``, which are rational and satisfy the same
    recurrence, so no square roots are needed.
    """
    n, a = spec.n, spec.a
    if spec.variant == "M":
        if a == 2:
            return ClosedFormReport(spec, "a=2", Fraction(1))
        if a == -2:
            return ClosedFormReport(spec, "a=-2", Fraction((-1) ** n * (2 * n + 1)),
                                    NEG_TWO_ERRATUM)
        s = _power_sums(a, n + 2)
        return ClosedFormReport(spec, "generic", (s[n + 1] + s[n]) / (2 + a))
    if a == 2:
        return ClosedFormReport(spec, "a=2", Fraction(n + 1))
    if a == -2:
        return ClosedFormReport(spec, "a=-2", Fraction((-1) ** n * (n + 1)))
    s = _power_sums(a, n + 2)
    return ClosedFormReport(spec, "generic", (2 * s[n] - a * s[n + 1]) / (4 - a * a))


def char_poly_M2(n: int) -> RatPolynomial:
    """Characteristic polynomial det(M_n(2) - x I), integer coefficients."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    a = RatPolynomial((2, -1))
    return _three_term(a - 1, a * a - a - 1, a, n)


@dataclass(frozen=True)
class EigenvalueDescriptor:
    n: int
    k: int
    approx: float
    minpoly: RatPolynomial

    @property
    def closed_form(self) -> str:
        return f"2+2cos(2*{self.k}*pi/{2 * self.n + 1})"

    def to_dict(self) -> dict:
        return {"k": str(self.k), "closed_form": self.closed_form,
                "approx": repr(self.approx), "minpoly": self.minpoly.to_json()}


def eigenvalues_M2(n: int) -> list[EigenvalueDescriptor]:
    """Eigenvalues ``2 + 2cos(2 k pi/(2n+1))``, k = 1..n, in ascending order."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    m = 2 * n + 1
    out = [EigenvalueDescriptor(n, k, 2 + 2 * math.cos(2 * k * math.pi / m),
                                minpoly_of_shifted_cos(m, k))
           for k in range(1, n + 1)]
    return sorted(out, key=lambda d: d.approx)


@dataclass(frozen=True)
class RationalRootReport:
    n: int
    p_at_1: int
    p_at_minus1: int

    @property
    def p_at_minus1_positive(self) -> bool:
        return self.p_at_minus1 > 0

    @property
    def has_rational_root(self) -> bool:
        # leading coefficient +-1 and constant term 1: only +-1 can be roots
        return self.p_at_1 == 0 or self.p_at_minus1 == 0

    @property
    def root_is_one(self) -> bool:
        return self.p_at_1 == 0

    def to_dict(self) -> dict:
        return {"n": str(self.n), "p_at_1": str(self.p_at_1),
                "p_at_minus1": str(self.p_at_minus1),
                "p_at_minus1_positive": self.p_at_minus1_positive,
                "has_rational_root": self.has_rational_root,
                "root_is_one": self.root_is_one}


def rational_root_classification(n: int) -> RationalRootReport:
    p = char_poly_M2(n)
    p1, pm1 = p(Fraction(1)), p(Fraction(-1))
    return RationalRootReport(n, int(p1), int(pm1))
