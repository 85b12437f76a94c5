"""Acceptance criteria 1-10.

Each criterion prints one line ``criterion N: PASS|FAIL  detail``.  Run with
``pytest tests/test_acceptance.py -v`` or directly as a script.
"""

import io
import itertools
import json
import math
import random
import time
from fractions import Fraction as F

import pytest

from torus_rigidity.algebraic_numbers import (cyclotomic_poly, minpoly_of_shifted_cos,
                                              real_cyclotomic_minpoly)
from torus_rigidity.cli import run as cli_run
from torus_rigidity.exact_linalg import IntMatrix, det, stack_rows, vec_mat
from torus_rigidity.folner import FolnerSequence, IntegerSubset
from torus_rigidity.measures import (AtomicMeasure, Lebesgue, TorusPointQ,
                                     finite_support_candidates, fourier, fourier_exact)
from torus_rigidity.mixing import DiagnosticsRequest, diagnose, fourier_sequence, orbit_measure
from torus_rigidity.rigidity import rigidity_harness
from torus_rigidity.strong_independence import box_check, powers_family, prove_powers_M2
from torus_rigidity.tridiagonal import (NEG_TWO_ERRATUM, TridiagSpec, char_poly_M2,
                                        det_closed_form, det_recurrence, eigenvalues_M2,
                                        make_matrix)

DOUBLE = IntMatrix.from_rows([[2]])
CAT = IntMatrix.from_rows([[2, 1], [1, 1]])
DIRAC = AtomicMeasure.dirac((0,))
THIRDS = AtomicMeasure.uniform([(F(1, 3),), (F(2, 3),)])
ALL_THIRDS = AtomicMeasure.uniform([(0,), (F(1, 3),), (F(2, 3),)])
PAIRS = (((1,), (1,)), ((1,), (-1,)), ((1,), (0,)), ((2,), (1,)))


def phi_by_count(m):
    return sum(1 for j in range(1, m + 1) if math.gcd(j, m) == 1)


def c1():
    checked = 0
    for n in range(1, 65):
        for a in range(-5, 6):
            for variant in ("M", "N"):
                spec = TridiagSpec(n, a, variant)
                rec = det_recurrence(spec)
                elim = det(make_matrix(spec))
                closed = det_closed_form(spec).value
                if not rec == elim == closed:
                    return False, f"mismatch at n={n} a={a} {variant}: {rec} {elim} {closed}"
                checked += 1
        if det_recurrence(TridiagSpec(n, 2, "M")) != 1:
            return False, f"det M_{n}(2) != 1"
        if det_recurrence(TridiagSpec(n, 2, "N")) != n + 1:
            return False, f"det N_{n}(2) != {n + 1}"
        r = det_closed_form(TridiagSpec(n, -2, "M"))
        if r.value != (-1) ** n * (2 * n + 1) or r.erratum != NEG_TWO_ERRATUM:
            return False, f"a=-2 case wrong at n={n}"
    return True, f"{checked} (n, a, variant) triples agree exactly; a=-2 erratum flagged"


def c2():
    worst = 0.0
    for n in range(1, 21):
        p = char_poly_M2(n)
        lams = [d.approx for d in eigenvalues_M2(n)]
        if len(set(lams)) != n or not all(0 < x < 4 for x in lams):
            return False, f"n={n}: eigenvalues not distinct or outside (0, 4)"
        for x in lams:
            worst = max(worst, abs(p(x)))
    if worst >= 1e-8:
        return False, f"max |p(lambda_k)| = {worst:.3g}"
    divisions = 0
    for n in range(1, 11):
        m = 2 * n + 1
        if all(m % d for d in range(2, m)):
            for k in range(1, n + 1):
                _, r = divmod(char_poly_M2(n), minpoly_of_shifted_cos(m, k))
                if not r.is_zero():
                    return False, f"nonzero remainder n={n} k={k}"
                divisions += 1
    return True, f"max |p(lambda_k)| = {worst:.2g} over n <= 20; {divisions} exact divisions"


def c3():
    for n in range(1, 51):
        p = char_poly_M2(n)
        if (p(F(1)) == 0) != (n % 3 == 1):
            return False, f"n={n}: p(1) = {p(F(1))}"
        if not p(F(-1)) > 0:
            return False, f"n={n}: p(-1) = {p(F(-1))}"
    return True, "p(1) = 0 iff n = 1 mod 3 and p(-1) > 0 for n <= 50"


def c4():
    for m in range(3, 101):
        phi = phi_by_count(m)
        if cyclotomic_poly(m).degree != phi:
            return False, f"deg Phi_{m} != {phi}"
        if 2 * real_cyclotomic_minpoly(m).degree != phi:
            return False, f"deg psi_{m} != {phi}/2"
    return True, "deg Phi_m = phi(m), deg psi_m = phi(m)/2 for 3 <= m <= 100"


def c5():
    expected = {1, 2, 3, 5, 6, 8, 9, 11, 14, 15}
    proven = {n for n in range(1, 16) if prove_powers_M2(n).conclusion == "proven"}
    if proven != expected:
        return False, f"proven set {sorted(proven)}"
    if any(prove_powers_M2(n).conclusion != "not_proven" for n in range(1, 16) if n not in expected):
        return False, "unexpected conclusion outside the prime set"
    tested = 0
    for n, K in ((1, 10), (2, 10), (3, 10), (5, 3), (6, 3)):
        box = box_check(powers_family(make_matrix(TridiagSpec(n, 2, "M")), n), K)
        if not box.all_pass or box.counterexample is not None:
            return False, f"box n={n} K={K} counterexample {box.counterexample}"
        if box.vectors_tested != (2 * K + 1) ** n - 1:
            return False, f"box n={n} K={K} tested {box.vectors_tested}"
        tested += box.vectors_tested
    return True, f"proven exactly for {sorted(expected)}; {tested} box vectors, 0 counterexamples"


def _direct_matches(mu, A, k, l, count=1000):
    seq = fourier_sequence(mu, A, k, l)
    row = k
    for j in range(count):
        if seq.value(j) != fourier_exact(mu, tuple(a + b for a, b in zip(row, l))):
            return False
        row = vec_mat(row, A)
    return True


def c6():
    dirac = diagnose(DiagnosticsRequest(DIRAC, DOUBLE, PAIRS))
    if set(dirac["overall"].values()) != {"pass"}:
        return False, f"Dirac: {dirac['overall']}"
    th = diagnose(DiagnosticsRequest(THIRDS, DOUBLE, PAIRS))
    weak11 = th["weak_mixing"].pairs[0]
    if (th["ergodic"].overall, th["weak_mixing"].overall, th["strong_mixing"].overall) != \
            ("pass", "fail", "fail"):
        return False, f"thirds: {th['overall']}"
    if weak11.exact_limit != F(9, 16) or weak11.verdict != "fail":
        return False, f"thirds weak limit {weak11.exact_limit}"
    at = diagnose(DiagnosticsRequest(ALL_THIRDS, DOUBLE, (((1,), (-1,)),)))
    p = at["ergodic"].pairs[0]
    if p.exact_limit != F(1, 2) or p.target != 0 or p.verdict != "fail":
        return False, f"{{0,1/3,2/3}}: limit {p.exact_limit} target {p.target}"
    for mu in (DIRAC, THIRDS, ALL_THIRDS):
        for k, l in PAIRS:
            if not _direct_matches(mu, DOUBLE, k, l):
                return False, f"oracle differs from direct summation for {mu} {k} {l}"
    return True, ("Dirac passes all; thirds weak limit 9/16; {0,1/3,2/3} ergodic limit 1/2 vs 0; "
                  f"oracle = direct sum for j < 1000 on {3 * len(PAIRS)} sequences")


def c7():
    fam = powers_family(make_matrix(TridiagSpec(2, 2, "M")), 2)
    L = stack_rows([vec_mat((1, 0), B) for B in fam.members])
    bound = finite_support_candidates(L)
    origin = TorusPointQ.reduce((0, 0))
    if L != IntMatrix.from_rows([[2, 1], [5, 3]]) or bound != [origin]:
        return False, f"bound {bound}"
    rng = random.Random(7)
    constructed = hits = 0
    for _ in range(3000):
        q = rng.randint(1, 12)
        pts = {(rng.randrange(q), rng.randrange(q)) for _ in range(rng.randint(1, 4))}
        if rng.random() < 0.2:
            pts.add((0, 0))
        raw = [rng.randint(1, 5) for _ in pts]
        mu = AtomicMeasure(2, tuple((TorusPointQ((F(a, q), F(b, q))), F(w, sum(raw)))
                                    for (a, b), w in zip(sorted(pts), raw)))
        constructed += 1
        if all(fourier(mu, row).exactly_one for row in ((2, 1), (5, 3))):
            hits += 1
            if not mu.support <= set(bound):
                return False, f"support of {mu} escapes the bound"
    return True, f"bound = {{(0,0)}}; {hits} of {constructed} measures exactly_one, all inside"


def c8():
    M2 = make_matrix(TridiagSpec(2, 2, "M"))
    fam = powers_family(M2, 2)
    cert = prove_powers_M2(2)
    out = []
    for mu, want in ((AtomicMeasure.dirac((0, 0)), "dirac"), (Lebesgue(2), "lebesgue")):
        r = rigidity_harness(mu, M2, fam, IntegerSubset.everything(), FolnerSequence.interval(),
                             (1, 0), cert)
        if r.conclusion != want:
            return False, f"{want} input gave {r.conclusion}"
        if len(r.fourier_chain) != 2 or [c.vector for c in r.fourier_chain] != [(2, 1), (5, 3)]:
            return False, "Fourier chain incomplete"
        js = sorted({c.j for c in r.pair_invariance})
        if js != list(range(65)) or r.j_bound != 64:
            return False, "hypothesis checks do not cover j <= 64"
        out.append(f"{want} ({len(r.pair_invariance)} checks)")
    return True, "; ".join(out)


def c9():
    t0 = time.perf_counter()
    mu = orbit_measure(TorusPointQ((F(1, 10007), F(0))), CAT, 20000)
    worst = 0.0
    for k in itertools.product(range(-3, 4), repeat=2):
        if any(k):
            worst = max(worst, abs(fourier(mu, k).approx))
    elapsed = time.perf_counter() - t0
    ok = worst < 0.05 and elapsed < 10
    return ok, f"max |mu^(k)| = {worst:.4f} over 48 k; {elapsed:.2f} s"


def _cli(argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli_run(argv, stdout=out, stderr=err)
    if code != 0:
        raise RuntimeError(f"{argv}: exit {code}: {err.getvalue()}")
    return out.getvalue()


def _criterion_commands(tmp):
    files = {}
    for name, data in (("dirac", DIRAC.to_json()), ("thirds", THIRDS.to_json()),
                       ("all_thirds", ALL_THIRDS.to_json()), ("double", [[2]]),
                       ("pairs", [{"k": list(k), "l": list(l)} for k, l in PAIRS])):
        path = tmp / f"{name}.json"
        path.write_text(json.dumps(data))
        files[name] = str(path)
    cmds = [["si", "prove", "--n", str(n)] for n in range(1, 16)]
    cmds += [["si", "box", "--n", str(n), "--K", str(K)]
             for n, K in ((1, 10), (2, 10), (3, 10), (5, 3), (6, 3))]
    for mu in ("dirac", "thirds", "all_thirds"):
        for crit in ("ergodic", "weak", "strong"):
            for fmt in ("json", "csv"):
                cmds.append(["mix", crit, "--measure", files[mu], "--matrix", files["double"],
                             "--pairs", files["pairs"], "--format", fmt])
    return cmds


def c10(tmp):
    cmds = _criterion_commands(tmp)
    outputs = {}
    for workers in ("0", "0", "4", "1"):
        for i, argv in enumerate(cmds):
            if argv[:2] == ["si", "prove"]:
                text = _cli(argv)
            else:
                text = _cli(argv + ["--workers", workers])
            outputs.setdefault(i, set()).add(text)
    differing = [" ".join(cmds[i][:4]) for i, s in outputs.items() if len(s) != 1]
    if differing:
        return False, f"outputs differ for {differing}"
    return True, f"{len(cmds)} commands byte-identical over 4 runs (workers 0, 0, 4, 1)"


CRITERIA = {1: c1, 2: c2, 3: c3, 4: c4, 5: c5, 6: c6, 7: c7, 8: c8, 9: c9, 10: c10}


def report_line(n, ok, detail):
    return f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys, tmp_path):
    fn = CRITERIA[n]
    ok, detail = fn(tmp_path) if n == 10 else fn()
    with capsys.disabled():
        print("\n" + report_line(n, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    import pathlib
    import tempfile

    with tempfile.TemporaryDirectory() as d:
        for n, fn in sorted(CRITERIA.items()):
            ok, detail = fn(pathlib.Path(d)) if n == 10 else fn()
            print(report_line(n, ok, detail))
