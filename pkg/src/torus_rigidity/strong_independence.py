"""Strong independence of n integer matrices over Z^n \\ {0}.

Matrices B_1..B_n in GL(n, Z) are strongly independent when, for every
nonzero integer row vector k, the rows k B_1, ..., k B_n are linearly
independent.  Three tools are provided:

* :func:`check_vector` decides the condition for one k exactly,
* :func:`box_check` enumerates a box [-K, K]^n (finite evidence only),
* :func:`prove_powers_M2` certifies the powers of M_n(2) through the degrees
  of the minimal polynomials of its eigenvalues.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .algebraic_numbers import format_rational, is_prime, minpoly_of_shifted_cos
from .errors import ContractError, DimensionError, InputFormatError
from .exact_linalg import IntMatrix, _bareiss, det, mat_mul, stack_rows, vec_mat
from .tridiagonal import TridiagSpec, char_poly_M2, make_matrix

__all__ = [
    "MatrixFamily",
    "SICertificate",
    "BoxReport",
    "SIReport",
    "check_vector",
    "box_check",
    "powers_family",
    "prove_powers_M2",
    "si_report",
    "default_box_size",
]


@dataclass(frozen=True)
class MatrixFamily:
    """Exactly n unimodular n x n integer matrices."""

    n: int
    members: tuple

    def __post_init__(self):
        members = tuple(self.members)
        object.__setattr__(self, "members", members)
        if self.n < 1:
            raise DimensionError("family dimension must be >= 1")
        if len(members) != self.n:
            raise DimensionError(f"family needs exactly {self.n} members, got {len(members)}")
        for i, m in enumerate(members):
            if (m.rows, m.cols) != (self.n, self.n):
                raise DimensionError(f"member {i} is {m.rows}x{m.cols}, expected {self.n}x{self.n}")
            if abs(det(m)) != 1:
                raise ContractError(f"member {i} is not unimodular (det = {det(m)})")

    @classmethod
    def from_json(cls, data) -> "MatrixFamily":
        try:
            n = int(data["n"])
            members = tuple(IntMatrix.from_rows(m) for m in data["members"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputFormatError(f"bad family literal: {exc}") from exc
        return cls(n, members)

    def to_json(self) -> dict:
        return {"n": self.n, "members": [m.to_lists() for m in self.members]}


def _check_k(k: Sequence[int], n: int) -> tuple[int, ...]:
    k = tuple(k)
    if len(k) != n:
        raise DimensionError(f"vector has dimension {len(k)}, family has n = {n}")
    if not any(k):
        raise ContractError("k must be a nonzero vector")
    return k


def check_vector(k: Sequence[int], fam: MatrixFamily) -> bool:
    """True iff k B_1, ..., k B_n are linearly independent."""
    k = _check_k(k, fam.n)
    return det(stack_rows([vec_mat(k, b) for b in fam.members])) != 0


@dataclass(frozen=True)
class BoxReport:
    K: int
    all_pass: bool
    counterexample: Optional[tuple]
    vectors_tested: int

    def to_dict(self) -> dict:
        return {"K": str(self.K), "all_pass": self.all_pass,
                "counterexample": None if self.counterexample is None
                else [str(x) for x in self.counterexample],
                "vectors_tested": str(self.vectors_tested)}

    @classmethod
    def from_dict(cls, d: dict) -> "BoxReport":
        ce = d["counterexample"]
        return cls(int(d["K"]), d["all_pass"],
                   None if ce is None else tuple(int(x) for x in ce),
                   int(d["vectors_tested"]))


def _scan_slab(columns: list[list[tuple[int, ...]]], K: int, first: int):
    """Scan all k with k[0] == first in lex order.

    Returns ``(position_of_first_failure or None, nonzero_vectors_seen)``.
    """
    n = len(columns)
    seen = 0
    for tail in itertools.product(range(-K, K + 1), repeat=n - 1):
        k = (first,) + tail
        if not any(k):
            continue
        seen += 1
        rows = [[sum(a * b for a, b in zip(k, col)) for col in cols] for cols in columns]
        if _bareiss(rows) == 0:
            return seen, seen
    return None, seen


def default_box_size(n: int) -> int:
    return 10 if n <= 3 else 3


def box_check(fam: MatrixFamily, K: int, workers: int = 1) -> BoxReport:
    """Exhaustive check of every nonzero k in [-K, K]^n.

    Vectors are visited lexicographically from (-K, ..., -K) and the first
    failure is reported.  With ``workers > 1`` slabs of fixed first
    coordinate run in separate processes; the answer is the same.
    """
    if K < 1:
        raise ContractError("K must be >= 1")
    columns = [[m.column(j) for j in range(fam.n)] for m in fam.members]
    firsts = list(range(-K, K + 1))
    if workers == 0:
        workers = os.cpu_count() or 1
    if workers > 1 and len(firsts) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_slab, itertools.repeat(columns),
                                    itertools.repeat(K), firsts))
    else:
        results = []
        for f in firsts:
            results.append(_scan_slab(columns, K, f))
            if results[-1][0] is not None:
                break
    tested = 0
    for first, (fail_at, seen) in zip(firsts, results):
        if fail_at is not None:
            tested += fail_at
            # replay the slab to recover the failing vector
            count = 0
            for tail in itertools.product(range(-K, K + 1), repeat=fam.n - 1):
                k = (first,) + tail
                if any(k):
                    count += 1
                    if count == fail_at:
                        return BoxReport(K, False, k, tested)
        tested += seen
    return BoxReport(K, True, None, tested)


def powers_family(B: IntMatrix, n: int) -> MatrixFamily:
    """The family (B, B^2, ..., B^n)."""
    if (B.rows, B.cols) != (n, n):
        raise DimensionError(f"B must be {n}x{n}")
    if abs(det(B)) != 1:
        raise ContractError("B must be unimodular")
    members = [B]
    for _ in range(n - 1):
        members.append(mat_mul(members[-1], B))
    return MatrixFamily(n, tuple(members))


@dataclass(frozen=True)
class SICertificate:
    family_descriptor: str
    n: int
    prime_modulus: int
    per_eigenvalue_degrees: tuple
    conclusion: str
    notes: tuple = field(default=())

    def to_dict(self) -> dict:
        return {"family_descriptor": self.family_descriptor,
                "n": str(self.n),
                "prime_modulus": str(self.prime_modulus),
                "per_eigenvalue_degrees": [str(d) for d in self.per_eigenvalue_degrees],
                "conclusion": self.conclusion,
                "notes": list(self.notes)}

    @classmethod
    def from_dict(cls, d: dict) -> "SICertificate":
        return cls(d["family_descriptor"], int(d["n"]), int(d["prime_modulus"]),
                   tuple(int(x) for x in d["per_eigenvalue_degrees"]),
                   d["conclusion"], tuple(d["notes"]))


def prove_powers_M2(n: int) -> SICertificate:
    """Degree certificate for the family M_n(2), ..., M_n(2)^n.

    Proven when every eigenvalue 2 + 2cos(2 k pi/(2n+1)) has a minimal
    polynomial of degree n (orthogonal eigenvectors then leave no room for an
    integer k with dependent k B_i).
    """
    if n < 1:
        raise ContractError("n must be >= 1")
    modulus = 2 * n + 1
    polys = [minpoly_of_shifted_cos(modulus, k) for k in range(1, n + 1)]
    degrees = tuple(p.degree for p in polys)
    prime = is_prime(modulus)
    proven = prime and all(d == n for d in degrees)
    notes = ["M_n(2) symmetric, det 1: powers unimodular",
             "criterion: every eigenvalue minimal polynomial has degree n"]
    notes.append(f"2n+1 = {modulus} is {'prime' if prime else 'composite'}")
    for k, (p, d) in enumerate(zip(polys, degrees), start=1):
        if d < n:
            what = f" = {format_rational(-p.coeffs[0])}" if d == 1 else ""
            notes.append(f"eigenvalue k={k}, 2+2cos({2 * k}pi/{modulus}){what}, "
                         f"has minimal polynomial {p} of degree {d} < {n}")
    if proven:
        cp = char_poly_M2(n)
        if (cp * (-1) ** n) != polys[0]:
            raise ArithmeticError("characteristic polynomial disagrees with eigenvalue minpoly")
        notes.append("char poly = (-1)^n * eigenvalue minimal polynomial, irreducible")
    return SICertificate(f"powers of M_{n}(2)", n, modulus, degrees,
                         "proven" if proven else "not_proven", tuple(notes))


@dataclass(frozen=True)
class SIReport:
    verdict: str
    box: BoxReport
    certificate: Optional[SICertificate]
    notes: tuple = ()

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "box": self.box.to_dict(),
                "certificate": None if self.certificate is None else self.certificate.to_dict(),
                "notes": list(self.notes)}


def _is_powers_of_M2(fam: MatrixFamily) -> bool:
    expected = powers_family(make_matrix(TridiagSpec(fam.n, 2, "M")), fam.n)
    return expected.members == fam.members


def si_report(fam: MatrixFamily, K: int, certificate: Optional[SICertificate] = None,
              workers: int = 1) -> SIReport:
    """Combine box evidence with an optional certificate.

    The verdict is ``refuted`` on any box failure, ``proven`` if a proven
    certificate for this very family is supplied, ``evidence_only`` otherwise.
    """
    box = box_check(fam, K, workers=workers)
    notes = []
    if not box.all_pass:
        return SIReport("refuted", box, certificate, ("box search found a dependent vector",))
    if certificate is not None:
        if certificate.n != fam.n or not _is_powers_of_M2(fam):
            notes.append("certificate ignored: it does not describe this family")
            certificate = None
        elif certificate.conclusion == "proven":
            return SIReport("proven", box, certificate, tuple(notes))
        else:
            notes.append("certificate did not prove strong independence")
    notes.append(f"all nonzero k in [-{K},{K}]^{fam.n} pass; this is evidence, not a proof")
    return SIReport("evidence_only", box, certificate, tuple(notes))
