"""Følner sequences in N, integer subsets, and densities along them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .errors import ContractError, InputFormatError

__all__ = ["FolnerSequence", "IntegerSubset", "DensityReport", "density", "folner_check"]


@dataclass(frozen=True)
class FolnerSequence:
    """A sequence F_1, F_2, ... of finite nonempty subsets of N.

    ``interval``: F_N = {0, ..., N-1}.
    ``shifted_interval``: F_N = {a_N, ..., a_N + N - 1} with a_N = offset + step*N.
    ``custom``: F_N = sets[N-1] for explicitly listed sets (not checked to be Følner).
    """

    kind: str = "interval"
    offset: int = 0
    step: int = 0
    sets: tuple = field(default=())

    def __post_init__(self):
        if self.kind not in ("interval", "shifted_interval", "custom"):
            raise ContractError(f"unknown Følner kind {self.kind!r}")
        if self.kind == "custom":
            sets = tuple(tuple(sorted(set(s))) for s in self.sets)
            if not sets or any(not s for s in sets):
                raise ContractError("custom Følner sets must be nonempty")
            if any(x < 0 for s in sets for x in s):
                raise ContractError("Følner sets live in N")
            object.__setattr__(self, "sets", sets)
        elif self.offset < 0 or self.step < 0:
            raise ContractError("offsets must be nonnegative")

    @classmethod
    def interval(cls) -> "FolnerSequence":
        return cls("interval")

    @classmethod
    def shifted(cls, offset: int = 0, step: int = 1) -> "FolnerSequence":
        return cls("shifted_interval", offset=offset, step=step)

    @classmethod
    def custom(cls, sets: Sequence[Sequence[int]]) -> "FolnerSequence":
        return cls("custom", sets=tuple(tuple(s) for s in sets))

    @classmethod
    def from_json(cls, data) -> "FolnerSequence":
        if isinstance(data, str):
            data = {"kind": data}
        try:
            kind = data["kind"]
            if kind == "interval":
                return cls.interval()
            if kind in ("shifted", "shifted_interval"):
                return cls.shifted(int(data.get("offset", 0)), int(data.get("step", 1)))
            if kind == "custom":
                return cls.custom([[int(x) for x in s] for s in data["sets"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputFormatError(f"bad Følner literal: {exc}") from exc
        raise InputFormatError(f"unknown Følner kind {data.get('kind')!r}")

    def to_json(self) -> dict:
        if self.kind == "interval":
            return {"kind": "interval"}
        if self.kind == "shifted_interval":
            return {"kind": "shifted_interval", "offset": str(self.offset), "step": str(self.step)}
        return {"kind": "custom", "sets": [[str(x) for x in s] for s in self.sets]}

    @property
    def is_interval_kind(self) -> bool:
        return self.kind != "custom"

    @property
    def max_index(self) -> Optional[int]:
        return len(self.sets) if self.kind == "custom" else None

    def start(self, N: int) -> int:
        return 0 if self.kind == "interval" else self.offset + self.step * N

    def members(self, N: int) -> Sequence[int]:
        if N < 1:
            raise ContractError("Følner index starts at 1")
        if self.kind == "custom":
            if N > len(self.sets):
                raise ContractError(f"custom Følner sequence has only {len(self.sets)} sets")
            return self.sets[N - 1]
        a = self.start(N)
        return range(a, a + N)


class IntegerSubset:
    """A subset E of N with decidable membership."""

    def __init__(self, contains: Callable[[int], bool], description: str):
        self._contains = contains
        self.description = description

    @classmethod
    def explicit(cls, values: Sequence[int]) -> "IntegerSubset":
        vals = frozenset(values)
        return cls(vals.__contains__, f"explicit{sorted(vals)}")

    @classmethod
    def progression(cls, start: int, step: int) -> "IntegerSubset":
        """{start + step*j : j >= 0}; step 0 gives the singleton."""
        if step < 0:
            raise ContractError("progression step must be >= 0")
        if step == 0:
            return cls(lambda x: x == start, f"{{{start}}}")
        return cls(lambda x: x >= start and (x - start) % step == 0,
                   f"{{{start} + {step}j : j >= 0}}")

    @classmethod
    def everything(cls) -> "IntegerSubset":
        return cls(lambda x: x >= 0, "N")

    @classmethod
    def predicate(cls, fn: Callable[[int], bool], description: str = "predicate") -> "IntegerSubset":
        return cls(fn, description)

    @classmethod
    def from_json(cls, data) -> "IntegerSubset":
        try:
            kind = data["kind"]
            if kind == "all":
                return cls.everything()
            if kind == "explicit":
                return cls.explicit([int(x) for x in data["values"]])
            if kind == "progression":
                return cls.progression(int(data["start"]), int(data["step"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputFormatError(f"bad subset literal: {exc}") from exc
        raise InputFormatError(f"unknown subset kind {kind!r}")

    def __contains__(self, x: int) -> bool:
        return bool(self._contains(x))

    def count_in(self, values) -> int:
        return sum(1 for x in values if x in self)

    def __repr__(self) -> str:
        return f"IntegerSubset({self.description})"


@dataclass(frozen=True)
class DensityReport:
    partials: tuple
    estimate: Optional[Fraction]
    upper: Fraction
    lower: Fraction

    @property
    def diverged(self) -> bool:
        return self.estimate is None


def density(E: IntegerSubset, sigma: FolnerSequence, N_max: int,
            spread_tol: Fraction = Fraction(1, 10)) -> DensityReport:
    """Partial ratios |E ∩ F_N| / |F_N| for N = 1..N_max.

    Upper and lower estimates are the max and min over the second half of
    the partials.  If they differ by more than ``spread_tol`` the estimate
    is reported as diverged (None); otherwise it is the last partial.
    """
    if N_max < 1:
        raise ContractError("N_max must be >= 1")
    partials = []
    if sigma.kind == "interval":
        hits = 0
        for N in range(1, N_max + 1):
            hits += (N - 1) in E
            partials.append(Fraction(hits, N))
    else:
        for N in range(1, N_max + 1):
            F = sigma.members(N)
            partials.append(Fraction(E.count_in(F), len(F)))
    tail = partials[(N_max - 1) // 2:]
    upper, lower = max(tail), min(tail)
    estimate = partials[-1] if upper - lower <= spread_tol else None
    return DensityReport(tuple(partials), estimate, upper, lower)


def folner_check(sigma: FolnerSequence, m: int, N_max: int) -> list[Fraction]:
    """Ratios |(F_N + m) Δ F_N| / |F_N| for N = 1..N_max."""
    out = []
    for N in range(1, N_max + 1):
        F = set(sigma.members(N))
        shifted = {x + m for x in F}
        out.append(Fraction(len(F ^ shifted), len(F)))
    return out
