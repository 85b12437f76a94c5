"""Replay of the rigidity argument on concrete measures.

Given a measure mu, a matrix A and a strongly independent family B_1..B_n,
the harness checks invariance of mu under A and under A^j + B_i for sampled
j in E, evaluates the Fourier chain fourier(mu, k B_i) at a witness k, and
when every value is exactly 1 bounds the support of mu by the finite set of
x with (k B_i) . x integral for all i.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .algebraic_numbers import format_rational
from .errors import ContractError, DimensionError, UnsupportedError
from .exact_linalg import IntMatrix, det, identity, mat_mul, stack_rows, vec_mat
from .folner import FolnerSequence, IntegerSubset, density
from .measures import (AtomicMeasure, FourierValue, Lebesgue, MeasureSpec, fourier,
                       finite_support_candidates, is_invariant)
from .mixing import DiagnosticsReport
from .strong_independence import MatrixFamily, SICertificate, SIReport, _is_powers_of_M2

__all__ = ["RigidityReport", "InvarianceCheck", "ChainEntry", "DiracCheck",
           "rigidity_harness", "dirac_check", "DEFAULT_J_BOUND"]

DEFAULT_J_BOUND = 64

Evidence = Union[SIReport, SICertificate]


@dataclass(frozen=True)
class InvarianceCheck:
    j: int
    i: int
    holds: Optional[bool]

    def to_dict(self) -> dict:
        return {"j": str(self.j), "i": str(self.i), "holds": self.holds}


@dataclass(frozen=True)
class ChainEntry:
    i: int
    vector: tuple
    value: FourierValue

    def to_dict(self) -> dict:
        return {"i": str(self.i), "k_B_i": [str(x) for x in self.vector], **self.value.to_dict()}


@dataclass(frozen=True)
class RigidityReport:
    witness_k: tuple
    j_bound: int
    sampled_j: tuple
    E_upper_density: Optional[str]
    A_invariance: bool
    pair_invariance: tuple
    fourier_chain: tuple
    support_bound: Optional[tuple]
    support_contained: Optional[bool]
    conclusion: str
    notes: tuple = ()

    def to_dict(self) -> dict:
        return {
            "conclusion": self.conclusion,
            "witness_k": [str(x) for x in self.witness_k],
            "hypotheses_checked": {
                "A_invariance": self.A_invariance,
                "j_bound": str(self.j_bound),
                "sampled_j": [str(j) for j in self.sampled_j],
                "E_upper_density": self.E_upper_density,
                "per_pair_invariance": [c.to_dict() for c in self.pair_invariance],
            },
            "fourier_chain": [c.to_dict() for c in self.fourier_chain],
            "support_bound": None if self.support_bound is None
            else [p.to_json() for p in self.support_bound],
            "support_contained": self.support_contained,
            "notes": list(self.notes),
        }


def _evidence_ok(family: MatrixFamily, evidence: Optional[Evidence]) -> str:
    if evidence is None:
        raise ContractError("strong independence evidence for the family is required")
    if isinstance(evidence, SICertificate):
        if evidence.conclusion != "proven" or evidence.n != family.n or not _is_powers_of_M2(family):
            raise ContractError("certificate does not prove strong independence of this family")
        return "strong independence: proven by certificate"
    if isinstance(evidence, SIReport):
        if evidence.verdict == "refuted":
            raise ContractError("evidence refutes strong independence of the family")
        if evidence.verdict == "proven":
            return "strong independence: proven by certificate"
        return (f"strong independence: box evidence only (K = {evidence.box.K}, "
                f"{evidence.box.vectors_tested} vectors)")
    raise ContractError(f"unrecognised evidence of type {type(evidence).__name__}")


def rigidity_harness(mu: MeasureSpec, A: IntMatrix, family: MatrixFamily, E: IntegerSubset,
                     sigma: FolnerSequence, witness_k: Sequence[int],
                     evidence: Optional[Evidence], j_bound: int = DEFAULT_J_BOUND) -> RigidityReport:
    n = mu.n
    if (A.rows, A.cols) != (n, n) or family.n != n:
        raise DimensionError("measure, matrix and family dimensions differ")
    k = tuple(witness_k)
    if len(k) != n:
        raise DimensionError(f"witness has dimension {len(k)}, expected {n}")
    if not any(k):
        raise ContractError("witness k must be nonzero")
    if j_bound < 0:
        raise ContractError("j_bound must be >= 0")
    notes = [_evidence_ok(family, evidence)]

    sampled = tuple(j for j in range(j_bound + 1) if j in E)
    if sigma.kind == "custom":
        N_max = min(sigma.max_index, j_bound + 1)
    else:
        N_max = j_bound + 1
    upper = format_rational(density(E, sigma, N_max).upper)
    notes.append(f"invariance under A^j + B_i checked for j in E with j <= {j_bound}; "
                 "larger j are not examined")

    a_inv = is_invariant(mu, A)
    checks = []
    power = identity(n)
    for j in range(j_bound + 1):
        if j in E:
            for i, B in enumerate(family.members, start=1):
                C = power + B
                try:
                    holds: Optional[bool] = is_invariant(mu, C)
                except UnsupportedError:
                    holds = None
                checks.append(InvarianceCheck(j, i, holds))
        power = mat_mul(power, A)
    if any(c.holds is None for c in checks):
        notes.append("singular A^j + B_i under Lebesgue measure: invariance left undecided")

    chain = tuple(ChainEntry(i, v, fourier(mu, v))
                  for i, v in enumerate((vec_mat(k, B) for B in family.members), start=1))

    def report(conclusion, bound=None, contained=None):
        return RigidityReport(k, j_bound, sampled, upper, a_inv, tuple(checks), chain,
                              bound, contained, conclusion, tuple(notes))

    if not a_inv or any(c.holds is False for c in checks):
        notes.append("a required invariance fails")
        return report("inconsistent_input")
    if isinstance(mu, Lebesgue):
        notes.append("Lebesgue measure: every nonzero Fourier coefficient vanishes")
        return report("lebesgue")
    if not all(c.value.exactly_one for c in chain):
        notes.append("Fourier chain: some fourier(mu, k B_i) is not exactly 1")
        return report("inconsistent_input")
    L = stack_rows([c.vector for c in chain])
    if det(L) == 0:
        notes.append("rows k B_i are dependent, contradicting strong independence")
        return report("inconsistent_input")
    bound = tuple(finite_support_candidates(L))
    contained = mu.support <= set(bound)
    if not contained:
        notes.append("support of mu escapes the finite bound")
        return report("inconsistent_input", bound, contained)
    return report("dirac" if len(mu.atoms) == 1 else "atomic_finite", bound, contained)


@dataclass(frozen=True)
class DiracCheck:
    is_dirac: bool
    contradiction_candidate: bool

    def to_dict(self) -> dict:
        return {"is_dirac": self.is_dirac, "contradiction_candidate": self.contradiction_candidate}


def dirac_check(mu: AtomicMeasure, weak_mixing_evidence: Optional[DiagnosticsReport] = None) -> DiracCheck:
    """Whether mu is a single atom.

    A weakly mixing invariant atomic measure must be Dirac, so a multi-atom
    measure whose weak-mixing report passes on every tested pair is flagged.
    Finite testing cannot certify weak mixing; the flag is a warning.
    """
    if not isinstance(mu, AtomicMeasure):
        raise ContractError("dirac_check needs an atomic measure")
    one = len(mu.atoms) == 1
    flag = (not one and weak_mixing_evidence is not None
            and weak_mixing_evidence.criterion == "weak_mixing"
            and weak_mixing_evidence.overall == "pass")
    return DiracCheck(one, flag)
