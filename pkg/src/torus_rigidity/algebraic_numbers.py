"""Polynomials over Q, cyclotomic and real-cyclotomic minimal polynomials,
and exact arithmetic in simple number fields Q[x]/(f).

The two families of minimal polynomials that matter here are

* ``cyclotomic_poly(m)``, the minimal polynomial of exp(2 pi i / m), and
* ``real_cyclotomic_minpoly(m)``, the minimal polynomial of 2 cos(2 pi / m),

whose degrees are phi(m) and phi(m)/2.  Their irreducibility over Q is a
classical fact and is not re-derived by a factoring algorithm; only a
rational-root screen is applied when a field is built.

:class:`CyclotomicNumber` stores exact finite sums of roots of unity, which is
what Fourier coefficients of rational atomic measures are.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

from .errors import ContractError, DomainError, InputFormatError
from .exact_linalg import RatMatrix, solve_rational

__all__ = [
    "RatPolynomial",
    "NumberField",
    "NumberFieldElement",
    "CyclotomicNumber",
    "cyclotomic_poly",
    "euler_phi",
    "factorize",
    "is_prime",
    "real_cyclotomic_minpoly",
    "cyclotomic_degree_check",
    "real_cyclotomic_degree_check",
    "field_of",
    "eval_poly",
    "minpoly_of_shifted_cos",
    "parse_rational",
    "format_rational",
]

Number = Union[int, Fraction]


def parse_rational(value) -> Fraction:
    """Parse an int or a ``"p/q"`` string into a Fraction."""
    if isinstance(value, bool):
        raise InputFormatError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputFormatError(f"not a rational: {value!r}") from exc
    raise InputFormatError(f"not a rational: {value!r}")


def format_rational(x: Number) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class RatPolynomial:
    """Polynomial with rational coefficients, ascending degree order.

    Trailing zeros are stripped, so the zero polynomial has ``coeffs == ()``.
    """

    coeffs: tuple

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def x(cls) -> "RatPolynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: Number) -> "RatPolynomial":
        return cls((c,))

    @classmethod
    def from_json(cls, data) -> "RatPolynomial":
        if not isinstance(data, list):
            raise InputFormatError("polynomial literal must be a JSON array")
        return cls(tuple(parse_rational(c) for c in data))

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __add__(self, other) -> "RatPolynomial":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RatPolynomial(tuple(self[i] + other[i] for i in range(n)))

    __radd__ = __add__

    def __neg__(self) -> "RatPolynomial":
        return RatPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "RatPolynomial":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "RatPolynomial":
        return _as_poly(other) - self

    def __mul__(self, other) -> "RatPolynomial":
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return RatPolynomial(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "RatPolynomial":
        result = RatPolynomial((1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other) -> tuple["RatPolynomial", "RatPolynomial"]:
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.leading
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i]
            if c:
                f = c / lead
                quot[i - dq] = f
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] -= f * b
        return RatPolynomial(tuple(quot)), RatPolynomial(tuple(rem[:dq]))

    def __floordiv__(self, other) -> "RatPolynomial":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "RatPolynomial":
        return divmod(self, other)[1]

    def __call__(self, x):
        """Horner evaluation at a number, float, complex or field element.

        A float argument is converted exactly and only the result is rounded:
        float Horner on high-degree integer polynomials cancels badly near
        their roots.
        """
        if isinstance(x, float):
            return float(self(Fraction(x)))
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + (complex(c) if isinstance(x, complex) else c)
        return acc

    def compose(self, other: "RatPolynomial") -> "RatPolynomial":
        acc = RatPolynomial(())
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def shift(self, c: Number) -> "RatPolynomial":
        """The polynomial ``p(x + c)``."""
        return self.compose(RatPolynomial((c, 1)))

    def monic(self) -> "RatPolynomial":
        return RatPolynomial(tuple(c / self.leading for c in self.coeffs))

    def derivative(self) -> "RatPolynomial":
        return RatPolynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mag = abs(c)
            coef = "" if (mag == 1 and i) else format_rational(mag)
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            body = coef + ("*" if coef and mono else "") + mono
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _as_poly(p) -> RatPolynomial:
    if isinstance(p, RatPolynomial):
        return p
    if isinstance(p, (int, Fraction)):
        return RatPolynomial((p,))
    raise TypeError(f"cannot treat {type(p).__name__} as a polynomial")


def poly_gcdex(a: RatPolynomial, b: RatPolynomial):
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and g monic (or zero)."""
    r0, r1 = a, b
    s0, s1 = RatPolynomial((1,)), RatPolynomial(())
    t0, t1 = RatPolynomial(()), RatPolynomial((1,))
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    lead = r0.leading
    return r0.monic(), RatPolynomial(tuple(c / lead for c in s0.coeffs)), RatPolynomial(
        tuple(c / lead for c in t0.coeffs))


# ---------------------------------------------------------------------------
# elementary number theory


def factorize(m: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    if m < 1:
        raise DomainError("factorize needs m >= 1")
    out: dict[int, int] = {}
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def is_prime(m: int) -> bool:
    return m >= 2 and factorize(m) == {m: 1}


def euler_phi(m: int) -> int:
    if m < 1:
        raise DomainError("euler_phi needs m >= 1")
    result = m
    for p in factorize(m):
        result -= result // p
    return result


def _mobius(m: int) -> int:
    f = factorize(m)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def _divisors(m: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(m) + 1) if m % d == 0]
    return sorted(set(small + [m // d for d in small]))


@lru_cache(maxsize=None)
def _cyclotomic_int(m: int) -> tuple[int, ...]:
    # Phi_m = prod_{d | m} (x^d - 1)^{mu(m/d)}: multiply first, then divide,
    # each step touching O(m) coefficients.
    num = [1]
    dens = []
    for d in _divisors(m):
        mu = _mobius(m // d)
        if mu == 1:
            new = [0] * (len(num) + d)
            for i, c in enumerate(num):
                new[i + d] += c
                new[i] -= c
            num = new
        elif mu == -1:
            dens.append(d)
    for d in dens:
        # divide by (x^d - 1): q_i = q_{i-d} - num_i read from the low end
        deg = len(num) - 1 - d
        q = [0] * (deg + 1)
        for i in range(deg + 1):
            q[i] = -num[i] + (q[i - d] if i >= d else 0)
        num = q
    return tuple(num)


def cyclotomic_poly(m: int) -> RatPolynomial:
    """The m-th cyclotomic polynomial (integer coefficients)."""
    if m < 1:
        raise DomainError("cyclotomic_poly needs m >= 1")
    return RatPolynomial(_cyclotomic_int(m))


def _reduce_mod_cyclotomic(coeffs: list[int], q: int) -> list[int]:
    """Remainder of an integer polynomial modulo the monic Phi_q, in ints."""
    phi = _cyclotomic_int(q)
    d = len(phi) - 1
    rem = list(coeffs)
    for i in range(len(rem) - 1, d - 1, -1):
        c = rem[i]
        if c:
            base = i - d
            for j, b in enumerate(phi):
                if b:
                    rem[base + j] -= c * b
    return rem[:d]


@lru_cache(maxsize=None)
def _real_cyclotomic(m: int) -> RatPolynomial:
    phi = cyclotomic_poly(m)
    h = phi.degree // 2
    # z^h * (z + 1/z)^i = sum_t C(i, t) z^(h - i + 2t).  Match the
    # coefficients of z^h .. z^(2h) of Phi_m; unknowns c_0 .. c_h of psi.
    size = h + 1
    rows = []
    for s in range(size):
        row = []
        for i in range(size):
            # exponent h - i + 2t = h + s  <=>  t = (i + s) / 2
            t2 = i + s
            row.append(math.comb(i, t2 // 2) if t2 % 2 == 0 and t2 // 2 <= i else 0)
        rows.append(row)
    rhs = [phi[h + s] for s in range(size)]
    coeffs = solve_rational(RatMatrix.from_rows(rows), rhs)
    psi = RatPolynomial(coeffs)
    # the lower half of Phi_m must match too (Phi_m is palindromic for m >= 2)
    lifted = RatPolynomial(())
    for i, c in enumerate(psi.coeffs):
        term = RatPolynomial((0, 0, 1)) + 1  # z^2 + 1
        lifted = lifted + (term ** i) * RatPolynomial((0,) * (h - i) + (c,))
    if lifted != phi:
        raise ArithmeticError(f"coefficient matching failed for m={m}")
    return psi


def real_cyclotomic_minpoly(m: int) -> RatPolynomial:
    """Minimal polynomial of ``2 cos(2 pi / m)``, monic of degree phi(m)/2."""
    if m < 3:
        raise DomainError("real_cyclotomic_minpoly needs m >= 3")
    return _real_cyclotomic(m)


def _minpoly_two_cos(m: int) -> RatPolynomial:
    # 2cos(2 pi / m) for every m >= 1; m = 1, 2 are rational.
    if m == 1:
        return RatPolynomial((-2, 1))
    if m == 2:
        return RatPolynomial((2, 1))
    return _real_cyclotomic(m)


@dataclass(frozen=True)
class DegreeCheck:
    m: int
    field_degree: int
    expected: int

    @property
    def equal(self) -> bool:
        return self.field_degree == self.expected

    def to_dict(self) -> dict:
        return {"m": self.m, "field_degree": self.field_degree,
                "expected": self.expected, "equal": self.equal}


def cyclotomic_degree_check(m: int) -> DegreeCheck:
    """Compare deg Phi_m with phi(m)."""
    return DegreeCheck(m, cyclotomic_poly(m).degree, euler_phi(m))


def real_cyclotomic_degree_check(m: int) -> DegreeCheck:
    """Compare the degree of 2cos(2 pi/m) over Q with phi(m)/2."""
    if m < 3:
        raise DomainError("real_cyclotomic_degree_check needs m >= 3")
    return DegreeCheck(m, real_cyclotomic_minpoly(m).degree, euler_phi(m) // 2)


def minpoly_of_shifted_cos(m: int, k: int) -> RatPolynomial:
    """Minimal polynomial of ``2 + 2 cos(2 k pi / m)``.

    The angle is reduced to lowest terms first, so non-primitive k (possible
    when m is composite) land on a smaller real cyclotomic field.
    """
    if m < 3:
        raise DomainError("minpoly_of_shifted_cos needs m >= 3")
    if not 1 <= k <= m - 1:
        raise DomainError(f"k must lie in 1..{m - 1}, got {k}")
    reduced = m // math.gcd(k, m)
    return _minpoly_two_cos(reduced).shift(-2)


# ---------------------------------------------------------------------------
# simple number fields


def _rational_roots(p: RatPolynomial) -> list[Fraction]:
    if p.degree < 1:
        return []
    den = math.lcm(*(c.denominator for c in p.coeffs))
    ints = [int(c * den) for c in p.coeffs]
    roots = []
    low = next(i for i, c in enumerate(ints) if c)
    if low:
        roots.append(Fraction(0))
    ints = ints[low:]
    if len(ints) == 1:
        return roots
    a0, an = abs(ints[0]), abs(ints[-1])
    nums = _divisors(a0)
    dens = _divisors(an)
    poly = RatPolynomial(tuple(ints))
    for a in nums:
        for b in dens:
            for cand in (Fraction(a, b), Fraction(-a, b)):
                if cand not in roots and poly(cand) == 0:
                    roots.append(cand)
    return roots


@dataclass(frozen=True)
class NumberField:
    """The field Q[x]/(minpoly) for a monic irreducible minpoly."""

    minpoly: RatPolynomial

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    def element(self, coords: Iterable[Number]) -> "NumberFieldElement":
        return self.from_poly(RatPolynomial(tuple(coords)))

    def from_poly(self, p: RatPolynomial) -> "NumberFieldElement":
        r = p % self.minpoly
        coords = tuple(r[i] for i in range(self.degree))
        return NumberFieldElement(self, coords)

    def generator(self) -> "NumberFieldElement":
        return self.from_poly(RatPolynomial.x())

    def one(self) -> "NumberFieldElement":
        return self.from_poly(RatPolynomial((1,)))

    def zero(self) -> "NumberFieldElement":
        return self.from_poly(RatPolynomial(()))


def field_of(minpoly: RatPolynomial) -> NumberField:
    """Build a field descriptor; the minpoly must be monic.

    Irreducibility is the caller's responsibility, but a polynomial of degree
    >= 2 with a rational root is rejected.
    """
    if minpoly.degree < 1:
        raise ContractError("field minimal polynomial must have degree >= 1")
    if not minpoly.is_monic():
        raise ContractError(f"field minimal polynomial must be monic: {minpoly}")
    if minpoly.degree >= 2 and _rational_roots(minpoly):
        raise ContractError(f"{minpoly} has a rational root, so it is reducible")
    return NumberField(minpoly)


@dataclass(frozen=True)
class NumberFieldElement:
    field: NumberField
    coords: tuple

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coords)
        if len(coords) != self.field.degree:
            raise ContractError(
                f"element needs {self.field.degree} coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", coords)

    def as_poly(self) -> RatPolynomial:
        return RatPolynomial(self.coords)

    def _coerce(self, other) -> "NumberFieldElement":
        if isinstance(other, NumberFieldElement):
            if other.field != self.field:
                raise ContractError("elements belong to different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_poly(RatPolynomial((other,)))
        raise TypeError(f"cannot combine field element with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        return NumberFieldElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return NumberFieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return self.field.from_poly(self.as_poly() * other.as_poly())

    __rmul__ = __mul__

    def inverse(self) -> "NumberFieldElement":
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        g, s, _ = poly_gcdex(self.as_poly(), self.field.minpoly)
        if g.degree != 0:
            raise ContractError("minimal polynomial is reducible: element is a zero divisor")
        return self.field.from_poly(s)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __eq__(self, other):
        if isinstance(other, NumberFieldElement):
            return self.field == other.field and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coords))

    def evaluate(self, generator_value: float) -> float:
        """Numeric value under the embedding sending the generator to the given root."""
        return self.as_poly()(float(generator_value))


def eval_poly(p: RatPolynomial, x: NumberFieldElement) -> NumberFieldElement:
    """Horner evaluation of p at a field element, reducing at every step."""
    acc = x.field.zero()
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# exact sums of roots of unity


@dataclass(frozen=True)
class CyclotomicNumber:
    """The value ``sum_a w_a exp(2 pi i a / q)`` with rational weights.

    ``terms`` maps residues ``a`` modulo ``q`` to nonzero weights.  Two
    representations may denote the same complex number; :meth:`canonical`
    gives the unique coordinates in the power basis of Q(zeta_q), which is
    what equality uses.
    """

    q: int
    terms: Mapping[int, Fraction]

    def __post_init__(self):
        if self.q < 1:
            raise DomainError("root of unity order must be >= 1")
        clean = {}
        for a, w in self.terms.items():
            w = Fraction(w)
            if w:
                a %= self.q
                clean[a] = clean.get(a, Fraction(0)) + w
        object.__setattr__(self, "terms", {a: w for a, w in sorted(clean.items()) if w})

    @classmethod
    def from_reduced(cls, q: int, terms: dict) -> "CyclotomicNumber":
        """Skip normalisation: ``terms`` already has sorted residues in [0, q)
        and nonzero Fraction weights."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "q", q)
        object.__setattr__(obj, "terms", terms)
        return obj

    @classmethod
    def rational(cls, x: Number) -> "CyclotomicNumber":
        return cls(1, {0: Fraction(x)})

    def lift(self, q: int) -> "CyclotomicNumber":
        """Same value written over a multiple ``q`` of the current order."""
        if q % self.q:
            raise ContractError(f"cannot lift order {self.q} to {q}")
        f = q // self.q
        return CyclotomicNumber(q, {a * f: w for a, w in self.terms.items()})

    def _align(self, other) -> tuple["CyclotomicNumber", "CyclotomicNumber"]:
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.rational(other)
        if other.q == self.q:
            return self, other
        q = math.lcm(self.q, other.q)
        return self.lift(q), other.lift(q)

    def __add__(self, other):
        a, b = self._align(other)
        terms = dict(a.terms)
        for k, w in b.terms.items():
            terms[k] = terms.get(k, Fraction(0)) + w
        return CyclotomicNumber(a.q, terms)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.q, {a: -w for a, w in self.terms.items()})

    def __sub__(self, other):
        a, b = self._align(other)
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.q, {a: w * other for a, w in self.terms.items()})
        a, b = self._align(other)
        terms: dict[int, Fraction] = {}
        for i, w in a.terms.items():
            for j, v in b.terms.items():
                k = (i + j) % a.q
                terms[k] = terms.get(k, Fraction(0)) + w * v
        return CyclotomicNumber(a.q, terms)

    __rmul__ = __mul__

    def __truediv__(self, c: Number):
        return self * (1 / Fraction(c))

    def conjugate(self) -> "CyclotomicNumber":
        return CyclotomicNumber(self.q, {-a: w for a, w in self.terms.items()})

    def abs2(self) -> "CyclotomicNumber":
        return self * self.conjugate()

    def canonical(self) -> tuple[int, tuple]:
        """Order of the smallest cyclotomic field and power-basis coordinates."""
        if not self.terms:
            return 1, ()
        g = self.q
        for a in self.terms:
            g = math.gcd(g, a)
        q = self.q // g
        den = math.lcm(*(w.denominator for w in self.terms.values()))
        ints = [0] * (max(self.terms) // g + 1)
        for a, w in self.terms.items():
            ints[a // g] = w.numerator * (den // w.denominator)
        rem = _reduce_mod_cyclotomic(ints, q)
        while rem and not rem[-1]:
            rem.pop()
        coeffs = tuple(Fraction(c, den) for c in rem)
        if len(coeffs) <= 1:
            return 1, coeffs
        return q, coeffs

    def reduction_cost(self) -> int:
        """Rough number of integer operations :meth:`canonical` will take."""
        if not self.terms:
            return 0
        top = max(self.terms)
        phi = euler_phi(self.q)
        return max(top - phi + 1, 0) * phi

    def is_zero(self) -> bool:
        return self.canonical() == (1, ())

    def as_rational(self):
        """The value as a Fraction, or None if it is not rational."""
        q, coeffs = self.canonical()
        if q != 1:
            return None
        return coeffs[0] if coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.rational(other)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        # canonical() depends on the order the value is written over, so only
        # the rational part is a safe hash key
        return hash(self.as_rational())

    def __complex__(self) -> complex:
        return sum((float(w) * cmath.exp(2j * math.pi * a / self.q)
                    for a, w in self.terms.items()), 0j)

    def to_json(self):
        """``"p/q"`` when rational, otherwise the canonical cyclotomic form."""
        r = self.as_rational()
        if r is not None:
            return format_rational(r)
        q, coeffs = self.canonical()
        return {"root_of_unity_order": str(q),
                "power_basis": [format_rational(c) for c in coeffs]}

    @classmethod
    def from_json(cls, data) -> "CyclotomicNumber":
        if isinstance(data, (str, int)):
            return cls.rational(parse_rational(data))
        try:
            q = int(data["root_of_unity_order"])
            coeffs = [parse_rational(c) for c in data["power_basis"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputFormatError(f"bad cyclotomic value: {data!r}") from exc
        return cls(q, {i: c for i, c in enumerate(coeffs)})
