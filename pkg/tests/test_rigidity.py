from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings, strategies as st

from torus_rigidity.errors import ContractError, DimensionError
from torus_rigidity.exact_linalg import IntMatrix, det, stack_rows, vec_mat
from torus_rigidity.folner import FolnerSequence, IntegerSubset
from torus_rigidity.measures import (AtomicMeasure, Lebesgue, TorusPointQ,
                                     finite_support_candidates, fourier)
from torus_rigidity.mixing import DiagnosticsRequest, weak_mixing_average
from torus_rigidity.rigidity import dirac_check, rigidity_harness
from torus_rigidity.strong_independence import (MatrixFamily, SICertificate, powers_family,
                                                prove_powers_M2, si_report)
from torus_rigidity.tridiagonal import TridiagSpec, make_matrix

M2 = make_matrix(TridiagSpec(2, 2, "M"))
FAM = powers_family(M2, 2)
CERT = prove_powers_M2(2)
ALL = IntegerSubset.everything()
SIGMA = FolnerSequence.interval()
ORIGIN = AtomicMeasure.dirac((0, 0))


def run(mu, A=M2, fam=FAM, E=ALL, k=(1, 0), evidence=CERT, **kw):
    return rigidity_harness(mu, A, fam, E, SIGMA, k, evidence, **kw)


class TestHarness:
    def test_dirac(self):
        r = run(ORIGIN)
        assert r.conclusion == "dirac"
        assert [c.vector for c in r.fourier_chain] == [(2, 1), (5, 3)]
        assert all(c.value.exactly_one for c in r.fourier_chain)
        assert r.sampled_j == tuple(range(65))
        assert len(r.pair_invariance) == 65 * 2
        assert all(c.holds for c in r.pair_invariance)
        assert r.support_bound == (TorusPointQ.reduce((0, 0)),) and r.support_contained

    def test_lebesgue(self):
        r = run(Lebesgue(2))
        assert r.conclusion == "lebesgue"
        assert len(r.fourier_chain) == 2
        assert all(c.value.exactly_zero for c in r.fourier_chain)
        assert r.A_invariance and r.sampled_j[-1] == 64

    def test_box_evidence_accepted(self):
        r = run(ORIGIN, evidence=si_report(FAM, 4))
        assert r.conclusion == "dirac"
        assert "box evidence" in r.notes[0]

    def test_sparse_subset(self):
        r = run(ORIGIN, E=IntegerSubset.progression(0, 4), j_bound=20)
        assert r.sampled_j == (0, 4, 8, 12, 16, 20)
        assert r.E_upper_density is not None

    def test_chain_not_one(self):
        # x2 and x(2^j + 1) for even j both swap the atoms, yet the chain is -1/2
        thirds = AtomicMeasure.uniform([(F(1, 3),), (F(2, 3),)])
        fam = powers_family(make_matrix(TridiagSpec(1, 2, "M")), 1)
        r = rigidity_harness(thirds, IntMatrix.from_rows([[2]]), fam,
                             IntegerSubset.progression(0, 2), SIGMA, (1,),
                             si_report(fam, 5), j_bound=10)
        assert r.A_invariance
        assert r.conclusion == "inconsistent_input"

    def test_invariance_failure(self):
        half = AtomicMeasure.dirac((F(1, 2), 0))
        r = run(half, j_bound=4)
        assert r.conclusion == "inconsistent_input"
        # M2 sends (1/2, 0) to (0, 1/2)
        assert not r.A_invariance

    def test_evidence_required(self):
        with pytest.raises(ContractError):
            run(ORIGIN, evidence=None)

    def test_refuted_evidence(self):
        shear = MatrixFamily(2, (IntMatrix.from_rows([[1, 1], [0, 1]]), IntMatrix.from_rows([[1, 0], [0, 1]])))
        with pytest.raises(ContractError):
            run(ORIGIN, fam=shear, evidence=si_report(shear, 2))

    def test_foreign_certificate(self):
        with pytest.raises(ContractError):
            run(ORIGIN, evidence=prove_powers_M2(3))
        not_proven = SICertificate("powers of M_2(2)", 2, 5, (1, 1), "not_proven")
        with pytest.raises(ContractError):
            run(ORIGIN, evidence=not_proven)

    def test_bad_witness(self):
        with pytest.raises(ContractError):
            run(ORIGIN, k=(0, 0))
        with pytest.raises(DimensionError):
            run(ORIGIN, k=(1, 0, 0))

    def test_report_dict(self):
        d = run(ORIGIN, j_bound=3).to_dict()
        assert list(d) == ["conclusion", "witness_k", "hypotheses_checked", "fourier_chain",
                           "support_bound", "support_contained", "notes"]
        assert d["hypotheses_checked"]["j_bound"] == "3"


class TestSupportBound:
    def test_witness_bound_is_origin(self):
        L = stack_rows([vec_mat((1, 0), B) for B in FAM.members])
        assert L == IntMatrix.from_rows([[2, 1], [5, 3]])
        assert finite_support_candidates(L) == [TorusPointQ.reduce((0, 0))]

    @settings(max_examples=150)
    @given(st.integers(1, 8), st.data())
    def test_exactly_one_measures_live_in_bound(self, q, data):
        r = st.integers(0, q - 1)
        pts = data.draw(st.lists(st.tuples(r, r), min_size=1, max_size=4, unique=True))
        mu = AtomicMeasure.uniform([(F(a, q), F(b, q)) for a, b in pts])
        values = [fourier(mu, (2, 1)), fourier(mu, (5, 3))]
        if all(v.exactly_one for v in values):
            assert mu.support <= {TorusPointQ.reduce((0, 0))}

    @settings(max_examples=100)
    @given(st.lists(st.integers(-4, 4), min_size=4, max_size=4), st.data())
    def test_general_bound(self, entries, data):
        L = IntMatrix.from_rows([entries[:2], entries[2:]])
        assume(det(L) != 0)
        cands = finite_support_candidates(L)
        assert len(cands) == abs(det(L))
        chosen = data.draw(st.lists(st.sampled_from(cands), min_size=1, max_size=4, unique=True))
        mu = AtomicMeasure.uniform([p.coords for p in chosen])
        assert all(fourier(mu, L.row(i)).exactly_one for i in range(2))


class TestDiracCheck:
    def test_single_atom(self):
        assert dirac_check(ORIGIN).is_dirac

    def test_contradiction_flag(self):
        thirds = AtomicMeasure.uniform([(F(1, 3),), (F(2, 3),)])
        double = IntMatrix.from_rows([[2]])
        weak = weak_mixing_average(DiagnosticsRequest(thirds, double, (((1,), (1,)),)))
        assert not dirac_check(thirds, weak).contradiction_candidate
        # only pairs that happen to pass: flagged for review
        lucky = weak_mixing_average(DiagnosticsRequest(thirds, double, (((3,), (0,)),)))
        assert lucky.overall == "pass"
        c = dirac_check(thirds, lucky)
        assert not c.is_dirac and c.contradiction_candidate

    def test_needs_atomic(self):
        with pytest.raises(ContractError):
            dirac_check(Lebesgue(1))
