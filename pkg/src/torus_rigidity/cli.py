"""Command-line frontend.

Exit codes: 0 success, 1 contract or validation error (including bad flags),
2 unreadable or malformed input file.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Optional, Sequence

from . import algebraic_numbers as alg
from .errors import InputFormatError, RigidityError
from .exact_linalg import IntMatrix, det, stack_rows, vec_mat
from .folner import FolnerSequence, IntegerSubset
from .measures import (TorusPointQ, finite_support_candidates, fourier, fourier_exact,
                       is_invariant, measure_from_json)
from .mixing import (DiagnosticsRequest, ergodic_average, orbit_measure, strong_mixing_tail,
                     weak_mixing_average)
from .report import emit_report
from .rigidity import DEFAULT_J_BOUND, rigidity_harness
from .strong_independence import (MatrixFamily, _is_powers_of_M2, box_check, default_box_size,
                                  powers_family, prove_powers_M2, si_report)
from .tridiagonal import (TridiagSpec, char_poly_M2, det_closed_form, det_recurrence,
                          eigenvalues_M2, make_matrix, rational_root_classification)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# input helpers


def _load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path} is not valid JSON: {exc}") from exc


def _matrix(path: str) -> IntMatrix:
    data = _load_json(path)
    try:
        return IntMatrix.from_rows(data)
    except (TypeError, ValueError) as exc:
        raise InputFormatError(f"{path}: not a matrix literal ({exc})") from exc


def _int_vector(text: str) -> tuple[int, ...]:
    try:
        data = json.loads(text) if text.lstrip().startswith("[") else text.split(",")
        return tuple(int(x) for x in data)
    except (ValueError, TypeError) as exc:
        raise RigidityError(f"bad integer vector {text!r}") from exc


def _vector_file(path: str) -> tuple[int, ...]:
    data = _load_json(path)
    try:
        return tuple(int(x) for x in data)
    except (TypeError, ValueError) as exc:
        raise InputFormatError(f"{path}: not an integer vector") from exc


def _pairs(path: str) -> list:
    data = _load_json(path)
    try:
        out = []
        for item in data:
            if isinstance(item, dict):
                k, l = item["k"], item["l"]
            else:
                k, l = item
            out.append((tuple(int(x) for x in k), tuple(int(x) for x in l)))
        return out
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"{path}: bad pair list ({exc})") from exc


def _folner(value: str) -> FolnerSequence:
    if value == "interval":
        return FolnerSequence.interval()
    if value == "shifted":
        return FolnerSequence.shifted()
    return FolnerSequence.from_json(_load_json(value))


def _family(args) -> MatrixFamily:
    if args.family:
        return MatrixFamily.from_json(_load_json(args.family))
    if args.n is None:
        raise RigidityError("either --family or --n is required")
    return powers_family(make_matrix(TridiagSpec(args.n, 2, "M")), args.n)


def _workers(args) -> int:
    w = args.workers
    if w < 0:
        raise RigidityError("--workers must be >= 0")
    return w if w else (os.cpu_count() or 1)


# ---------------------------------------------------------------------------
# command handlers


def _tridiag_det(args):
    spec = TridiagSpec(args.n, alg.parse_rational(args.a), args.variant)
    report = det_closed_form(spec).to_dict()
    report["det_recurrence"] = alg.format_rational(det_recurrence(spec))
    if spec.a.denominator == 1:
        report["det_elimination"] = alg.format_rational(det(make_matrix(spec)))
    return report


def _tridiag_charpoly(args):
    p = char_poly_M2(args.n)
    return {"n": args.n, "matrix": f"M_{args.n}(2)", "charpoly": p.to_json(), "text": str(p)}


def _tridiag_eigen(args):
    return {"n": args.n, "eigenvalues": eigenvalues_M2(args.n)}


def _tridiag_classify(args):
    return rational_root_classification(args.n)


def _si_prove(args):
    return prove_powers_M2(args.n)


def _si_box(args):
    fam = _family(args)
    K = args.K if args.K is not None else default_box_size(fam.n)
    return box_check(fam, K, workers=_workers(args))


def _si_report(args):
    fam = _family(args)
    K = args.K if args.K is not None else default_box_size(fam.n)
    cert = prove_powers_M2(fam.n) if _is_powers_of_M2(fam) else None
    return si_report(fam, K, cert, workers=_workers(args))


def _field_cyclotomic(args):
    p = alg.cyclotomic_poly(args.n)
    return {"m": args.n, "poly": p.to_json(), "text": str(p), "degree": p.degree}


def _field_realmin(args):
    p = alg.real_cyclotomic_minpoly(args.n)
    return {"m": args.n, "poly": p.to_json(), "text": str(p), "degree": p.degree}


def _field_degrees(args):
    out = {"m": args.n, "cyclotomic": alg.cyclotomic_degree_check(args.n)}
    if args.n >= 3:
        out["real_cyclotomic"] = alg.real_cyclotomic_degree_check(args.n)
    return out


def _measure(args):
    return measure_from_json(_load_json(args.measure))


def _measure_fourier(args):
    mu = _measure(args)
    k = _int_vector(args.k)
    return {"k": list(k), "value": fourier_exact(mu, k).to_json(), **fourier(mu, k).to_dict()}


def _measure_invariant(args):
    mu = _measure(args)
    return {"invariant": is_invariant(mu, _matrix(args.matrix))}


def _measure_support(args):
    if args.matrix:
        L = _matrix(args.matrix)
    else:
        if not args.family or not args.witness:
            raise RigidityError("support needs --matrix, or --family with --witness")
        fam = MatrixFamily.from_json(_load_json(args.family))
        k = _vector_file(args.witness)
        L = stack_rows([vec_mat(k, B) for B in fam.members])
    return {"L": L.to_lists(), "candidates": [p.to_json() for p in finite_support_candidates(L)]}


def _measure_orbit(args):
    try:
        point = TorusPointQ(tuple(alg.parse_rational(c) for c in json.loads(args.point)))
    except (ValueError, TypeError) as exc:
        raise RigidityError(f"bad point {args.point!r}: {exc}") from exc
    return orbit_measure(point, _matrix(args.matrix), args.N)


def _request(args) -> DiagnosticsRequest:
    return DiagnosticsRequest(_measure(args), _matrix(args.matrix), tuple(_pairs(args.pairs)),
                              _folner(args.folner), args.N)


def _mix(fn):
    def run(args):
        return fn(_request(args), workers=_workers(args))
    return run


def _mix_rigidity(args):
    mu = _measure(args)
    A = _matrix(args.matrix)
    fam = MatrixFamily.from_json(_load_json(args.family))
    k = _vector_file(args.witness)
    E = IntegerSubset.from_json(_load_json(args.subset)) if args.subset else IntegerSubset.everything()
    K = args.K if args.K is not None else default_box_size(fam.n)
    cert = prove_powers_M2(fam.n) if _is_powers_of_M2(fam) else None
    evidence = si_report(fam, K, cert, workers=_workers(args))
    return rigidity_harness(mu, A, fam, E, _folner(args.folner), k, evidence, j_bound=args.j_bound)


# ---------------------------------------------------------------------------
# parser


def _integer(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")


def _common(p):
    p.add_argument("--format", choices=("json", "csv"), default="json", help="output format")
    p.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="torus-rigidity",
                     description="Exact tools for x A maps on the torus: tridiagonal families, "
                                 "strong independence, number fields, measures and mixing.")
    top = parser.add_subparsers(dest="group", metavar="{tridiag,si,field,measure,mix}",
                                parser_class=_Parser)
    top.required = True

    def leaf(sub, name, handler, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.set_defaults(handler=handler)
        _common(p)
        return p

    g = top.add_parser("tridiag", help="tridiagonal families M_n(a) and N_n(a)")
    sub = g.add_subparsers(dest="cmd", metavar="{det,charpoly,eigen,classify}")
    sub.required = True
    p = leaf(sub, "det", _tridiag_det, "determinant by closed form, recurrence and elimination")
    p.add_argument("--n", type=_integer, required=True, help="matrix size (>= 1)")
    p.add_argument("--a", required=True, help="diagonal entry, integer or p/q")
    p.add_argument("--variant", choices=("M", "N"), default="M", help="matrix family")
    for name, fn, text in (("charpoly", _tridiag_charpoly, "characteristic polynomial of M_n(2)"),
                           ("eigen", _tridiag_eigen, "eigenvalues of M_n(2) with minimal polynomials"),
                           ("classify", _tridiag_classify, "rational roots of the M_n(2) char poly")):
        p = leaf(sub, name, fn, text)
        p.add_argument("--n", type=_integer, required=True, help="matrix size (>= 1)")

    g = top.add_parser("si", help="strong independence")
    sub = g.add_subparsers(dest="cmd", metavar="{prove,box,report}")
    sub.required = True
    p = leaf(sub, "prove", _si_prove, "degree certificate for the powers of M_n(2)")
    p.add_argument("--n", type=_integer, required=True, help="dimension")
    for name, fn, text in (("box", _si_box, "exhaustive check of nonzero k in [-K, K]^n"),
                           ("report", _si_report, "box evidence combined with a certificate")):
        p = leaf(sub, name, fn, text)
        p.add_argument("--n", type=_integer, help="use the powers of M_n(2)")
        p.add_argument("--family", metavar="FILE", help='family JSON {"n": .., "members": [..]}')
        p.add_argument("--K", type=_integer, help="box half-width (default 10 for n <= 3, else 3)")
        p.add_argument("--workers", type=_integer, default=1, help="processes; 0 = all cores")

    g = top.add_parser("field", help="cyclotomic and real cyclotomic polynomials")
    sub = g.add_subparsers(dest="cmd", metavar="{cyclotomic,realmin,degrees}")
    sub.required = True
    for name, fn, text in (("cyclotomic", _field_cyclotomic, "the cyclotomic polynomial Phi_m"),
                           ("realmin", _field_realmin, "minimal polynomial of 2cos(2 pi/m)"),
                           ("degrees", _field_degrees, "field degrees against phi(m)")):
        p = leaf(sub, name, fn, text)
        p.add_argument("--n", type=_integer, required=True, metavar="M", help="the order m")

    g = top.add_parser("measure", help="measures on the torus")
    sub = g.add_subparsers(dest="cmd", metavar="{fourier,invariant,support,orbit}")
    sub.required = True
    p = leaf(sub, "fourier", _measure_fourier, "Fourier coefficient at k")
    p.add_argument("--measure", metavar="FILE", required=True, help="measure JSON")
    p.add_argument("--k", required=True, help="character, e.g. 1,0 or [1,0]")
    p = leaf(sub, "invariant", _measure_invariant, "invariance under x -> A x")
    p.add_argument("--measure", metavar="FILE", required=True, help="measure JSON")
    p.add_argument("--matrix", metavar="FILE", required=True, help="matrix JSON")
    p = leaf(sub, "support", _measure_support, "finite support bound {x : L x integral}")
    p.add_argument("--matrix", metavar="FILE", help="the matrix L")
    p.add_argument("--family", metavar="FILE", help="family; L has rows k B_i")
    p.add_argument("--witness", metavar="FILE", help="the vector k as a JSON list")
    p = leaf(sub, "orbit", _measure_orbit, "empirical measure of an orbit")
    p.add_argument("--point", required=True, help='start point, e.g. ["1/5","0"]')
    p.add_argument("--matrix", metavar="FILE", required=True, help="matrix JSON")
    p.add_argument("--N", type=_integer, required=True, help="orbit length")

    g = top.add_parser("mix", help="ergodicity, mixing and rigidity diagnostics")
    sub = g.add_subparsers(dest="cmd", metavar="{ergodic,weak,strong,rigidity}")
    sub.required = True
    for name, fn, text in (("ergodic", _mix(ergodic_average), "ergodic averages"),
                           ("weak", _mix(weak_mixing_average), "weak mixing averages"),
                           ("strong", _mix(strong_mixing_tail), "strong mixing tail values")):
        p = leaf(sub, name, fn, text)
        p.add_argument("--measure", metavar="FILE", required=True, help="measure JSON")
        p.add_argument("--matrix", metavar="FILE", required=True, help="matrix JSON")
        p.add_argument("--pairs", metavar="FILE", required=True,
                       help='pairs JSON [{"k": [..], "l": [..]}, ..]')
        p.add_argument("--folner", default="interval",
                       help="interval, shifted, or a Følner JSON file")
        p.add_argument("--N", type=_integer, default=1000, help="largest Følner index")
        p.add_argument("--workers", type=_integer, default=1, help="threads; 0 = all cores")
    p = leaf(sub, "rigidity", _mix_rigidity, "replay the rigidity argument")
    p.add_argument("--measure", metavar="FILE", required=True, help="measure JSON")
    p.add_argument("--matrix", metavar="FILE", required=True, help="matrix JSON")
    p.add_argument("--family", metavar="FILE", required=True, help="family JSON")
    p.add_argument("--witness", metavar="FILE", required=True, help="witness k as a JSON list")
    p.add_argument("--subset", metavar="FILE", help='E as JSON, default {"kind": "all"}')
    p.add_argument("--folner", default="interval", help="interval, shifted, or a Følner JSON file")
    p.add_argument("--j-bound", type=_integer, default=DEFAULT_J_BOUND, dest="j_bound",
                   help="largest j checked")
    p.add_argument("--K", type=_integer, help="box half-width for the independence evidence")
    p.add_argument("--workers", type=_integer, default=1, help="processes; 0 = all cores")
    return parser


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(str(exc), file=stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        text = emit_report(args.handler(args), args.format)
    except InputFormatError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except (RigidityError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
