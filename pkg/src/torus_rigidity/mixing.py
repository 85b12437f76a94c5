"""Fourier diagnostics for ergodicity and mixing of x A invariant measures.

For an invariant measure mu and characters k, l the three properties are
read off the sequence ``c_j = fourier(mu, k A^j + l)``:

* ergodic: Følner averages of c_j tend to fourier(mu, k) * fourier(mu, l);
* weakly mixing: Følner averages of |c_j - target|^2 tend to 0;
* strongly mixing: c_j itself tends to the target.

For a rational atomic measure with common denominator q, c_j depends only on
``k A^j mod q``, a deterministic walk on the finite set (Z/q)^n, so the
sequence is eventually periodic and every limit above is a finite exact
computation over one period.  Lebesgue measure is handled symbolically:
c_j is 1 exactly when k A^j + l = 0.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Optional, Sequence

from .algebraic_numbers import CyclotomicNumber, euler_phi
from .errors import ContractError, DimensionError, NotInvariantError
from .exact_linalg import IntMatrix, vec_mat
from .folner import FolnerSequence
from .measures import (AtomicMeasure, Lebesgue, MeasureSpec, TorusPointQ, fourier_exact,
                       is_invariant)

__all__ = [
    "DiagnosticsRequest",
    "DiagnosticsReport",
    "PairRecord",
    "EventuallyPeriodic",
    "find_cycle",
    "fourier_sequence",
    "ergodic_average",
    "weak_mixing_average",
    "strong_mixing_tail",
    "diagnose",
    "orbit_measure",
    "DEFAULT_TOLERANCE",
]

DEFAULT_TOLERANCE = 1e-6
# longest integer orbit searched for a repeat when the measure is Lebesgue
LEBESGUE_SEARCH_CAP = 200_000


@dataclass(frozen=True)
class DiagnosticsRequest:
    measure: MeasureSpec
    A: IntMatrix
    pairs: tuple
    folner: FolnerSequence = field(default_factory=FolnerSequence.interval)
    N_max: int = 1000
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        n = self.measure.n
        if (self.A.rows, self.A.cols) != (n, n):
            raise DimensionError(f"A is {self.A.rows}x{self.A.cols}, measure lives on T^{n}")
        pairs = tuple((tuple(k), tuple(l)) for k, l in self.pairs)
        for k, l in pairs:
            if len(k) != n or len(l) != n:
                raise DimensionError(f"pair {(k, l)} does not have dimension {n}")
        object.__setattr__(self, "pairs", pairs)
        if self.N_max < 1:
            raise ContractError("N_max must be >= 1")


# ---------------------------------------------------------------------------
# eventually periodic sequences


@dataclass(frozen=True)
class Cycle:
    """Orbit ``s_0, s_1, ...`` of a deterministic map, stored up to its first repeat."""

    states: tuple
    preperiod: int
    period: int

    def state(self, j: int):
        if j < len(self.states):
            return self.states[j]
        return self.states[self.preperiod + (j - self.preperiod) % self.period]


def find_cycle(start: Hashable, step: Callable, limit: Optional[int] = None) -> Optional[Cycle]:
    """Stored-state cycle detection; None if no repeat within ``limit`` steps."""
    seen = {start: 0}
    states = [start]
    s = start
    while limit is None or len(states) <= limit:
        s = step(s)
        if s in seen:
            mu = seen[s]
            return Cycle(tuple(states), mu, len(states) - mu)
        seen[s] = len(states)
        states.append(s)
    return None


@dataclass(frozen=True)
class EventuallyPeriodic:
    """Exact values: ``prefix`` followed by ``cycle`` repeated forever."""

    prefix: tuple
    cycle: tuple

    def value(self, j: int):
        if j < len(self.prefix):
            return self.prefix[j]
        return self.cycle[(j - len(self.prefix)) % len(self.cycle)]

    @property
    def preperiod(self) -> int:
        return len(self.prefix)

    @property
    def period(self) -> int:
        return len(self.cycle)

    def cycle_mean(self):
        total = self.cycle[0]
        for c in self.cycle[1:]:
            total = total + c
        return total / len(self.cycle)

    def map(self, fn) -> "EventuallyPeriodic":
        return EventuallyPeriodic(tuple(fn(c) for c in self.prefix), tuple(fn(c) for c in self.cycle))


def _max_finite_order(n: int) -> int:
    # lcm of all d with phi(d) <= n bounds the order of any finite-order
    # rational linear map on a subspace of dimension <= n
    out = 1
    for d in range(1, 2 * n * n + 3):
        if euler_phi(d) <= n:
            out = math.lcm(out, d)
    return out


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def fourier_sequence(mu: MeasureSpec, A: IntMatrix, k: Sequence[int],
                     l: Sequence[int]) -> Optional[EventuallyPeriodic]:
    """Exact eventually periodic form of ``j -> fourier(mu, k A^j + l)``.

    Returns None only for Lebesgue measure when the repeat search would
    exceed ``LEBESGUE_SEARCH_CAP`` steps.
    """
    k, l = tuple(k), tuple(l)
    n = mu.n
    if isinstance(mu, AtomicMeasure):
        q = mu.q
        cols = [A.column(j) for j in range(n)]

        def step(v):
            return tuple(sum(a * b for a, b in zip(v, c)) % q for c in cols)

        cyc = find_cycle(tuple(x % q for x in k), step)
        cache: dict = {}

        def val(s):
            if s not in cache:
                cache[s] = fourier_exact(mu, _add(s, l))
            return cache[s]

        return EventuallyPeriodic(tuple(val(s) for s in cyc.states[:cyc.preperiod]),
                                  tuple(val(s) for s in cyc.states[cyc.preperiod:]))

    # Lebesgue: an integer orbit v A^j is either eventually periodic, with
    # preperiod <= n and period dividing _max_finite_order(n), or never repeats.
    bound = n + _max_finite_order(n) + 1
    if bound > LEBESGUE_SEARCH_CAP:
        return None
    target = tuple(-x for x in l)
    cyc = find_cycle(k, lambda v: vec_mat(v, A), limit=bound)

    def ind(v):
        return CyclotomicNumber.rational(int(v == target))

    if cyc is not None:
        return EventuallyPeriodic(tuple(ind(s) for s in cyc.states[:cyc.preperiod]),
                                  tuple(ind(s) for s in cyc.states[cyc.preperiod:]))
    # all states distinct: k A^j = -l for at most one j, so the tail is 0
    return EventuallyPeriodic(tuple(ind(s) for s in _orbit(k, A, bound)),
                              (CyclotomicNumber.rational(0),))


def _orbit(k, A, count):
    out = [tuple(k)]
    for _ in range(count - 1):
        out.append(vec_mat(out[-1], A))
    return out


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class PairRecord:
    k: tuple
    l: tuple
    series: tuple
    target: CyclotomicNumber
    exact_limit: Optional[CyclotomicNumber]
    preperiod: Optional[int]
    period: Optional[int]
    verdict: str
    notes: tuple = ()

    @property
    def target_approx(self) -> complex:
        return approx(self.target)

    def to_dict(self) -> dict:
        return {
            "k": [str(x) for x in self.k],
            "l": [str(x) for x in self.l],
            "target": self.target.to_json(),
            "target_approx": _cjson(approx(self.target)),
            "exact_limit": None if self.exact_limit is None else self.exact_limit.to_json(),
            "preperiod": None if self.preperiod is None else str(self.preperiod),
            "period": None if self.period is None else str(self.period),
            "verdict": self.verdict,
            "series": [_cjson(z) for z in self.series],
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PairRecord":
        return cls(tuple(int(x) for x in d["k"]), tuple(int(x) for x in d["l"]),
                   tuple(complex(float(re), float(im)) for re, im in d["series"]),
                   CyclotomicNumber.from_json(d["target"]),
                   None if d["exact_limit"] is None else CyclotomicNumber.from_json(d["exact_limit"]),
                   None if d["preperiod"] is None else int(d["preperiod"]),
                   None if d["period"] is None else int(d["period"]),
                   d["verdict"], tuple(d["notes"]))


def approx(c: CyclotomicNumber) -> complex:
    """Complex value, exact whenever c is rational."""
    r = c.as_rational()
    return complex(float(r)) if r is not None else complex(c)


def _cjson(z) -> list[str]:
    z = complex(z)
    return [repr(z.real), repr(z.imag)]


def _combine(verdicts: Sequence[str]) -> str:
    if any(v == "fail" for v in verdicts):
        return "fail"
    if verdicts and all(v == "pass" for v in verdicts):
        return "pass"
    return "inconclusive"


@dataclass(frozen=True)
class DiagnosticsReport:
    criterion: str
    series_kind: str
    folner: dict
    N_max: int
    pairs: tuple
    overall: str

    def to_dict(self) -> dict:
        return {"criterion": self.criterion, "series_kind": self.series_kind,
                "folner": self.folner, "N_max": str(self.N_max),
                "overall": self.overall, "pairs": [p.to_dict() for p in self.pairs]}

    @classmethod
    def from_dict(cls, d: dict) -> "DiagnosticsReport":
        return cls(d["criterion"], d["series_kind"], d["folner"], int(d["N_max"]),
                   tuple(PairRecord.from_dict(p) for p in d["pairs"]), d["overall"])


def _require_invariant(req: DiagnosticsRequest) -> None:
    if not is_invariant(req.measure, req.A):
        raise NotInvariantError("measure is not invariant under A")


def _direct_values(mu: MeasureSpec, A: IntMatrix, k, l, seq: Optional[EventuallyPeriodic],
                   count: int) -> list[complex]:
    """Complex values c_0 .. c_{count-1}."""
    if seq is not None and isinstance(mu, AtomicMeasure):
        cache: dict = {}
        out = []
        for j in range(count):
            c = seq.value(j)
            key = id(c)
            if key not in cache:
                cache[key] = approx(c)
            out.append(cache[key])
        return out
    target = tuple(-x for x in l)
    return [1.0 + 0j if v == target else 0j for v in _orbit(k, A, count)]


def _folner_averages(values_at: Callable[[int], list], sigma: FolnerSequence,
                     N_max: int) -> list:
    if sigma.is_interval_kind:
        end = sigma.start(N_max) + N_max
        vals = values_at(end)
        prefix = [0j]
        for v in vals:
            prefix.append(prefix[-1] + v)
        return [(prefix[sigma.start(N) + N] - prefix[sigma.start(N)]) / N
                for N in range(1, N_max + 1)]
    top = max(max(sigma.members(N)) for N in range(1, N_max + 1))
    vals = values_at(top + 1)
    return [sum(vals[j] for j in sigma.members(N)) / len(sigma.members(N))
            for N in range(1, N_max + 1)]


def _run_pairs(req: DiagnosticsRequest, fn, workers: int) -> tuple:
    if workers != 1 and len(req.pairs) > 1:
        with ThreadPoolExecutor(max_workers=workers or None) as pool:
            return tuple(pool.map(fn, req.pairs))
    return tuple(fn(p) for p in req.pairs)


def _average_record(req: DiagnosticsRequest, pair, squared: bool) -> PairRecord:
    mu, A = req.measure, req.A
    k, l = pair
    target = fourier_exact(mu, k) * fourier_exact(mu, l)
    seq = fourier_sequence(mu, A, k, l)
    t_c = approx(target)
    notes = []

    def values_at(count):
        vals = _direct_values(mu, A, k, l, seq, count)
        if squared:
            return [abs(v - t_c) ** 2 + 0j for v in vals]
        return vals

    series = tuple(_folner_averages(values_at, req.folner, req.N_max))
    exact_limit = None
    if seq is not None and req.folner.is_interval_kind:
        if squared:
            t_bar = target.conjugate()
            dev = seq.map(lambda c: (c - target) * (c.conjugate() - t_bar))
            exact_limit = dev.cycle_mean()
            verdict = "pass" if exact_limit == 0 else "fail"
        else:
            exact_limit = seq.cycle_mean()
            verdict = "pass" if exact_limit == target else "fail"
    else:
        goal = 0j if squared else t_c
        verdict = "pass" if abs(series[-1] - goal) < req.tolerance else "inconclusive"
        if not req.folner.is_interval_kind:
            notes.append("custom Følner sequence: only partial averages are reported")
        else:
            notes.append("orbit repeat search exceeded its cap; verdict from partial averages")
    return PairRecord(k, l, series, target, exact_limit,
                      None if seq is None else seq.preperiod,
                      None if seq is None else seq.period, verdict, tuple(notes))


def ergodic_average(req: DiagnosticsRequest, workers: int = 1) -> DiagnosticsReport:
    """Følner averages of fourier(mu, k A^j + l) against fourier(mu, k) fourier(mu, l)."""
    _require_invariant(req)
    records = _run_pairs(req, lambda p: _average_record(req, p, squared=False), workers)
    return DiagnosticsReport("ergodic", "folner_average", req.folner.to_json(), req.N_max,
                             records, _combine([r.verdict for r in records]))


def weak_mixing_average(req: DiagnosticsRequest, workers: int = 1) -> DiagnosticsReport:
    """Følner averages of the squared deviation from the target."""
    _require_invariant(req)
    records = _run_pairs(req, lambda p: _average_record(req, p, squared=True), workers)
    return DiagnosticsReport("weak_mixing", "folner_average_squared_deviation",
                             req.folner.to_json(), req.N_max, records,
                             _combine([r.verdict for r in records]))


def _tail_record(req: DiagnosticsRequest, pair) -> PairRecord:
    mu, A = req.measure, req.A
    k, l = pair
    target = fourier_exact(mu, k) * fourier_exact(mu, l)
    seq = fourier_sequence(mu, A, k, l)
    series = tuple(_direct_values(mu, A, k, l, seq, req.N_max + 1))
    if seq is None:
        verdict = "pass" if abs(series[-1] - approx(target)) < req.tolerance else "inconclusive"
        return PairRecord(k, l, series, target, None, None, None, verdict,
                          ("orbit repeat search exceeded its cap",))
    first = seq.cycle[0]
    constant = all(c == first for c in seq.cycle[1:])
    if constant:
        verdict = "pass" if first == target else "fail"
        return PairRecord(k, l, series, target, first, seq.preperiod, seq.period, verdict)
    return PairRecord(k, l, series, target, None, seq.preperiod, seq.period, "fail",
                      ("periodic part is not constant: the limit does not exist",))


def strong_mixing_tail(req: DiagnosticsRequest, workers: int = 1) -> DiagnosticsReport:
    """Values fourier(mu, k A^j + l) for j = 0..N_max and their exact limit."""
    _require_invariant(req)
    records = _run_pairs(req, lambda p: _tail_record(req, p), workers)
    return DiagnosticsReport("strong_mixing", "tail_value", req.folner.to_json(), req.N_max,
                             records, _combine([r.verdict for r in records]))


def diagnose(req: DiagnosticsRequest, workers: int = 1) -> dict:
    """All three criteria plus the evidence summary."""
    erg = ergodic_average(req, workers)
    weak = weak_mixing_average(req, workers)
    strong = strong_mixing_tail(req, workers)
    return {"ergodic": erg, "weak_mixing": weak, "strong_mixing": strong,
            "overall": {"ergodic_evidence": erg.overall,
                        "weak_mixing_evidence": weak.overall,
                        "strong_mixing_evidence": strong.overall}}


def orbit_measure(x0: TorusPointQ, A: IntMatrix, N: int) -> AtomicMeasure:
    """Empirical measure of the first N points of the x A orbit of x0.

    Computed in integer arithmetic on (Z/q)^n, q the denominator of x0.
    """
    if (A.rows, A.cols) != (x0.n, x0.n):
        raise DimensionError("matrix and point dimensions differ")
    if N < 1:
        raise ContractError("N must be >= 1")
    q = x0.q
    state = tuple((c * q).numerator for c in x0.coords)
    rows = [A.row(i) for i in range(A.rows)]
    counts: dict[tuple, int] = {}
    for _ in range(N):
        counts[state] = counts.get(state, 0) + 1
        state = tuple(sum(a * b for a, b in zip(r, state)) % q for r in rows)
    return AtomicMeasure(x0.n, tuple(
        (TorusPointQ(tuple(Fraction(s, q) for s in st)), Fraction(c, N))
        for st, c in counts.items()))
