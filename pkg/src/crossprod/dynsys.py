"""Finite dynamical systems given by a permutation of {0, ..., m-1}.

A finite Hausdorff space is discrete, so interiors and closures of point sets
are the sets themselves; every predicate below is decided combinatorially.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from pathlib import Path

import numpy as np


class DomainError(ValueError):
    """A precondition of a mathematical operation is violated."""


@dataclass(frozen=True)
class DynSys:
    """The system (X, sigma) with ``sigma(x) = perm[x]``."""

    perm: tuple[int, ...]

    def __post_init__(self):
        if any(isinstance(p, bool) or int(p) != p for p in self.perm):
            raise DomainError(f"perm entries must be integers: {list(self.perm)}")
        perm = tuple(int(p) for p in self.perm)
        m = len(perm)
        if m < 1:
            raise DomainError("a system needs at least one point")
        if sorted(perm) != list(range(m)):
            raise DomainError(f"perm is not a bijection on 0..{m - 1}: {list(perm)}")
        object.__setattr__(self, "perm", perm)

    @property
    def size(self) -> int:
        return len(self.perm)

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        inv = [0] * self.size
        for x, y in enumerate(self.perm):
            inv[y] = x
        return tuple(inv)

    @cached_property
    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Cycle decomposition, each cycle starting at its smallest point."""
        seen = [False] * self.size
        out = []
        for start in range(self.size):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self.perm[x]
            out.append(tuple(cyc))
        return tuple(out)

    @cached_property
    def periods(self) -> tuple[int, ...]:
        per = [0] * self.size
        for cyc in self.cycles:
            for x in cyc:
                per[x] = len(cyc)
        return tuple(per)

    @cached_property
    def order(self) -> int:
        return math.lcm(*{len(c) for c in self.cycles})

    @cached_property
    def _power_table(self) -> np.ndarray:
        # row n holds sigma^n for n = 0..order-1
        table = np.empty((self.order, self.size), dtype=np.int64)
        table[0] = np.arange(self.size)
        p = np.asarray(self.perm, dtype=np.int64)
        for n in range(1, self.order):
            table[n] = p[table[n - 1]]
        table.setflags(write=False)
        return table

    def power(self, n: int) -> np.ndarray:
        """Index array of sigma^n (any integer n)."""
        return self._power_table[n % self.order]

    def apply(self, x: int, n: int = 1) -> int:
        self.check_point(x)
        return int(self.power(n)[x])

    def check_point(self, x: int) -> None:
        if not 0 <= x < self.size:
            raise DomainError(f"point index {x} out of range for a {self.size}-point system")

    def to_json(self) -> dict:
        return {"perm": list(self.perm)}

    @classmethod
    def from_json(cls, data: dict) -> DynSys:
        if "perm" not in data:
            raise DomainError("system file needs a 'perm' list")
        return cls(tuple(data["perm"]))

    @classmethod
    def load(cls, path) -> DynSys:
        return cls.from_json(json.loads(Path(path).read_text()))


@dataclass(frozen=True)
class PointSet:
    members: frozenset[int]
    universe_size: int

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(int(x) for x in self.members))
        bad = [x for x in self.members if not 0 <= x < self.universe_size]
        if bad:
            raise DomainError(f"points {sorted(bad)} outside 0..{self.universe_size - 1}")

    def __contains__(self, x) -> bool:
        return x in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other):
        if isinstance(other, PointSet):
            return self.members == other.members and self.universe_size == other.universe_size
        if isinstance(other, (set, frozenset)):
            return self.members == other
        return NotImplemented

    def __hash__(self):
        return hash((self.members, self.universe_size))

    def __or__(self, other: PointSet) -> PointSet:
        return PointSet(self.members | other.members, self.universe_size)

    def __and__(self, other: PointSet) -> PointSet:
        return PointSet(self.members & other.members, self.universe_size)

    @property
    def is_full(self) -> bool:
        return len(self.members) == self.universe_size

    def complement(self) -> PointSet:
        return PointSet(frozenset(range(self.universe_size)) - self.members, self.universe_size)

    def indicator(self) -> np.ndarray:
        out = np.zeros(self.universe_size, dtype=np.complex128)
        out[sorted(self.members)] = 1.0
        return out

    def to_list(self) -> list[int]:
        return sorted(self.members)


def fix_points(sys: DynSys, n: int) -> PointSet:
    """Fix_n: the points with sigma^n(x) = x. Fix_0 is all of X."""
    power = sys.power(n)
    return PointSet(frozenset(np.flatnonzero(power == np.arange(sys.size)).tolist()), sys.size)


def per_points(sys: DynSys, n: int) -> PointSet:
    """Per_n: the points of exact period n (n >= 1)."""
    if n < 1:
        raise DomainError(f"period must be >= 1, got {n}")
    return PointSet(frozenset(x for x, p in enumerate(sys.periods) if p == n), sys.size)


def orbit(sys: DynSys, x: int) -> PointSet:
    sys.check_point(x)
    for cyc in sys.cycles:
        if x in cyc:
            return PointSet(frozenset(cyc), sys.size)
    raise AssertionError("unreachable: every point lies on a cycle")


def aper_points(sys: DynSys) -> PointSet:
    # every point of a finite permutation is periodic
    return PointSet(frozenset(), sys.size)


@dataclass
class DynReport:
    size: int
    is_free: bool
    is_top_free: bool
    is_minimal: bool
    is_transitive: bool
    orbits: list[list[int]]
    orbit_periods: list[int]
    witnesses: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "is_free": self.is_free,
            "is_top_free": self.is_top_free,
            "is_minimal": self.is_minimal,
            "is_transitive": self.is_transitive,
            "orbits": self.orbits,
            "orbit_periods": self.orbit_periods,
            "witnesses": self.witnesses,
        }


def analyze(sys: DynSys) -> DynReport:
    """Freeness, topological freeness, minimality and transitivity with witnesses."""
    orbits = [sorted(c) for c in sys.cycles]
    orbits.sort()
    periods = [len(c) for c in orbits]
    n_min = min(periods)
    fix = fix_points(sys, n_min)
    single = len(orbits) == 1
    witnesses = {
        "free": {"periodic_point": int(min(fix.members)), "period": n_min},
        "top_free": {"n": n_min, "fix_n": fix.to_list()},
    }
    if not single:
        witnesses["minimal"] = {"orbit_partition": orbits}
        # U = first orbit, V = any other point: no iterate of U meets V
        witnesses["transitive"] = {"U": orbits[0], "V": orbits[1]}
    return DynReport(
        size=sys.size,
        is_free=aper_points(sys).is_full,
        is_top_free=all(len(fix_points(sys, n)) == 0 for n in range(1, sys.order + 1)),
        is_minimal=single,
        is_transitive=single,
        orbits=orbits,
        orbit_periods=periods,
        witnesses=witnesses,
    )


def bundled_systems() -> dict[str, Path]:
    """Name -> path of the example systems shipped with the package."""
    root = resources.files("crossprod") / "systems"
    return {Path(p.name).stem: Path(str(p)) for p in sorted(root.iterdir(), key=lambda q: q.name)
            if p.name.endswith(".json")}


def bundled(name: str) -> DynSys:
    known = bundled_systems()
    if name not in known:
        raise DomainError(f"no bundled system {name!r}; have {', '.join(known)}")
    return DynSys.load(known[name])
