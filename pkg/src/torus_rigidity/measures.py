"""Probability measures on the n-torus and their Fourier coefficients.

Two measure classes are supported: Lebesgue (Haar) measure, handled
symbolically, and finite atomic measures with rational atoms and rational
weights.  For the latter every Fourier coefficient is a finite rational
combination of q-th roots of unity, q being the common denominator of the
atoms, so it is represented exactly by a :class:`CyclotomicNumber`.

The x A map acts on column vectors, ``x -> A x mod Z^n``; characters are
indexed by integer row vectors, so the pushforward satisfies
``fourier(pushforward(mu, A), k) == fourier(mu, k A)``.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .algebraic_numbers import CyclotomicNumber, format_rational, parse_rational
from .errors import (ContractError, DimensionError, InputFormatError, SingularMatrixError,
                     UnsupportedError)
from .exact_linalg import IntMatrix, det, inverse_rational, mat_vec

__all__ = [
    "TorusPointQ",
    "AtomicMeasure",
    "Lebesgue",
    "MeasureSpec",
    "FourierValue",
    "SupportConstraint",
    "fourier",
    "fourier_exact",
    "pushforward",
    "is_invariant",
    "support_constraint",
    "finite_support_candidates",
    "measure_from_json",
]

# cap on integer operations spent deciding exactly_zero for one coefficient
ZERO_TEST_BUDGET = 5_000_000


@dataclass(frozen=True, order=True)
class TorusPointQ:
    """A point of R^n / Z^n with rational coordinates in [0, 1)."""

    coords: tuple

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coords)
        if not coords:
            raise DimensionError("torus point needs dimension >= 1")
        for c in coords:
            if not 0 <= c < 1:
                raise ContractError(f"coordinate {c} is outside [0, 1)")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def reduce(cls, coords: Iterable) -> "TorusPointQ":
        """Reduce arbitrary rational coordinates modulo 1."""
        return cls(tuple(Fraction(c) % 1 for c in coords))

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def q(self) -> int:
        return math.lcm(*(c.denominator for c in self.coords))

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coords]

    def __str__(self) -> str:
        return "(" + ", ".join(format_rational(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class Lebesgue:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise DimensionError("dimension must be >= 1")

    def to_json(self) -> dict:
        return {"variant": "lebesgue", "n": self.n}


@dataclass(frozen=True)
class AtomicMeasure:
    """Finitely many distinct rational atoms with positive weights summing to 1.

    Atoms are stored sorted by point, so equal measures compare equal.
    """

    n: int
    atoms: tuple

    def __post_init__(self):
        atoms = tuple(sorted((p, Fraction(w)) for p, w in self.atoms))
        if not atoms:
            raise ContractError("atomic measure needs at least one atom")
        for p, w in atoms:
            if p.n != self.n:
                raise DimensionError(f"atom {p} has dimension {p.n}, expected {self.n}")
            if w <= 0:
                raise ContractError(f"atom weight {w} is not positive")
        if len({p for p, _ in atoms}) != len(atoms):
            raise ContractError("atom points must be pairwise distinct")
        if sum(w for _, w in atoms) != 1:
            raise ContractError("atom weights must sum to 1")
        object.__setattr__(self, "atoms", atoms)

    @classmethod
    def from_weights(cls, n: int, weights: dict) -> "AtomicMeasure":
        return cls(n, tuple(weights.items()))

    @classmethod
    def dirac(cls, point: Sequence) -> "AtomicMeasure":
        p = point if isinstance(point, TorusPointQ) else TorusPointQ(tuple(point))
        return cls(p.n, ((p, Fraction(1)),))

    @classmethod
    def uniform(cls, points: Iterable[Sequence]) -> "AtomicMeasure":
        pts = [p if isinstance(p, TorusPointQ) else TorusPointQ(tuple(p)) for p in points]
        w = Fraction(1, len(pts))
        return cls(pts[0].n, tuple((p, w) for p in pts))

    @functools.cached_property
    def q(self) -> int:
        return math.lcm(*(p.q for p, _ in self.atoms))

    @functools.cached_property
    def scaled_atoms(self) -> tuple:
        """Atoms as (integer numerators over q, weight)."""
        q = self.q
        return tuple((tuple(c.numerator * (q // c.denominator) for c in p.coords), w)
                     for p, w in self.atoms)

    @functools.cached_property
    def weight_denominator(self) -> int:
        return math.lcm(*(w.denominator for _, w in self.atoms))

    @property
    def support(self) -> frozenset:
        return frozenset(p for p, _ in self.atoms)

    def weight(self, point: TorusPointQ) -> Fraction:
        for p, w in self.atoms:
            if p == point:
                return w
        return Fraction(0)

    def to_json(self) -> dict:
        return {"n": self.n, "variant": "atomic",
                "atoms": [{"point": p.to_json(), "weight": format_rational(w)}
                          for p, w in self.atoms]}


MeasureSpec = Union[Lebesgue, AtomicMeasure]


def measure_from_json(data) -> MeasureSpec:
    try:
        variant = data["variant"]
        n = int(data["n"])
        if variant == "lebesgue":
            return Lebesgue(n)
        if variant == "atomic":
            atoms = tuple((TorusPointQ(tuple(parse_rational(c) for c in a["point"])),
                           parse_rational(a["weight"])) for a in data["atoms"])
            return AtomicMeasure(n, atoms)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ContractError):
            raise
        raise InputFormatError(f"bad measure literal: {exc}") from exc
    raise InputFormatError(f"unknown measure variant {variant!r}")


@dataclass(frozen=True)
class FourierValue:
    approx: complex
    exactly_one: bool
    exactly_zero: bool

    def to_dict(self) -> dict:
        return {"approx": [repr(self.approx.real), repr(self.approx.imag)],
                "exactly_one": self.exactly_one, "exactly_zero": self.exactly_zero}


def _check_dim(mu: MeasureSpec, k: Sequence[int]) -> tuple[int, ...]:
    k = tuple(k)
    if len(k) != mu.n:
        raise DimensionError(f"character of dimension {len(k)} on a {mu.n}-torus")
    return k


def _phase_residues(mu: AtomicMeasure, k: Sequence[int], q: int) -> list[tuple[int, Fraction]]:
    if q != mu.q:
        raise ValueError("phases must be taken over the measure's own denominator")
    return [(sum(ki * c for ki, c in zip(k, ints)) % q, w) for ints, w in mu.scaled_atoms]


def fourier_exact(mu: MeasureSpec, k: Sequence[int]) -> CyclotomicNumber:
    """The coefficient ``integral of exp(2 pi i k.x) dmu`` as an exact value."""
    k = _check_dim(mu, k)
    if isinstance(mu, Lebesgue):
        return CyclotomicNumber.rational(int(not any(k)))
    q, den = mu.q, mu.weight_denominator
    acc: dict[int, int] = {}
    for a, w in _phase_residues(mu, k, q):
        acc[a] = acc.get(a, 0) + w.numerator * (den // w.denominator)
    return CyclotomicNumber.from_reduced(q, {a: Fraction(c, den) for a, c in sorted(acc.items()) if c})


def fourier(mu: MeasureSpec, k: Sequence[int],
            zero_test_budget: int = ZERO_TEST_BUDGET) -> FourierValue:
    """Fourier coefficient with exact tests for the values 1 and 0.

    ``exactly_one`` holds iff every phase k.x_j is an integer; positivity of
    the weights makes this equivalent to the coefficient being 1.
    ``exactly_zero`` is decided by divisibility of the weight polynomial by
    the cyclotomic polynomial; above ``zero_test_budget`` it is left False
    and only ``approx`` is meaningful.
    """
    k = _check_dim(mu, k)
    if isinstance(mu, Lebesgue):
        one = not any(k)
        return FourierValue(complex(int(one)), one, not one)
    value = fourier_exact(mu, k)
    if list(value.terms) == [0]:
        return FourierValue(1 + 0j, True, False)
    rational = None
    if value.reduction_cost() <= zero_test_budget:
        rational = value.as_rational()
    approx = complex(value) if rational is None else complex(float(rational))
    return FourierValue(approx, False, rational == 0)


def _check_square(mu_n: int, A: IntMatrix) -> None:
    if (A.rows, A.cols) != (mu_n, mu_n):
        raise DimensionError(f"matrix is {A.rows}x{A.cols}, torus has dimension {mu_n}")


def apply_map(A: IntMatrix, point: TorusPointQ) -> TorusPointQ:
    """T_A(x) = A x mod Z^n."""
    return TorusPointQ.reduce(mat_vec(A, point.coords))


def pushforward(mu: AtomicMeasure, A: IntMatrix) -> AtomicMeasure:
    """Image of mu under x -> A x mod Z^n; colliding atoms merge."""
    _check_square(mu.n, A)
    weights: dict[TorusPointQ, Fraction] = {}
    for p, w in mu.atoms:
        image = apply_map(A, p)
        weights[image] = weights.get(image, Fraction(0)) + w
    return AtomicMeasure.from_weights(mu.n, weights)


def is_invariant(mu: MeasureSpec, A: IntMatrix) -> bool:
    """Whether the x A map preserves mu.

    For Lebesgue measure this holds exactly when A is nonsingular; a singular
    A collapses the torus and is reported as unsupported.
    """
    _check_square(mu.n, A)
    if isinstance(mu, Lebesgue):
        if det(A) == 0:
            raise UnsupportedError("Lebesgue invariance under a singular matrix is not supported")
        return True
    return pushforward(mu, A) == mu


@dataclass(frozen=True)
class SupportConstraint:
    """The closed subgroup {x : k.x in Z}, i.e. the zero set of z^k - 1."""

    k: tuple

    def satisfied(self, point) -> bool:
        coords = point.coords if isinstance(point, TorusPointQ) else point
        if len(coords) != len(self.k):
            raise DimensionError("point and constraint dimensions differ")
        s = sum(ki * Fraction(c) for ki, c in zip(self.k, coords))
        return s.denominator == 1

    def validate(self, mu: AtomicMeasure) -> bool:
        return all(self.satisfied(p) for p, _ in mu.atoms)

    def filter(self, mu: AtomicMeasure) -> list[TorusPointQ]:
        return [p for p, _ in mu.atoms if self.satisfied(p)]

    def to_dict(self) -> dict:
        return {"k": [str(x) for x in self.k], "condition": "k.x in Z"}


def support_constraint(k: Sequence[int]) -> SupportConstraint:
    k = tuple(k)
    if not any(k):
        raise ContractError("k must be nonzero")
    return SupportConstraint(k)


def finite_support_candidates(L: IntMatrix, max_enumeration: int = 5_000_000) -> list[TorusPointQ]:
    """Every x in [0,1)^n with L x in Z^n, found by bounded enumeration.

    Row i of L is a character; if x lies in [0,1)^n then |(L x)_i| is at most
    the absolute row sum of L, so with M the largest such sum it suffices to
    try ``x = L^{-1} m`` for integer m in [-M, M]^n.  Returned sorted.
    """
    if not L.is_square:
        raise DimensionError("L must be square")
    if det(L) == 0:
        raise SingularMatrixError("L is singular")
    n = L.rows
    M = max(sum(abs(x) for x in L.row(i)) for i in range(n))
    if (2 * M + 1) ** n > max_enumeration:
        raise ContractError(f"enumeration of [-{M},{M}]^{n} exceeds {max_enumeration} points")
    inv = inverse_rational(L)
    found = set()
    for m in itertools.product(range(-M, M + 1), repeat=n):
        x = mat_vec(inv, m)
        if all(0 <= c < 1 for c in x):
            found.add(TorusPointQ(x))
    return sorted(found)
