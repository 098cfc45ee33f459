"""Neighbourhoods, neighbourhood systems and the topology <-> system round trip.

Families are quantified over the whole grade grid: every set whose grades
lie on the chain is a candidate neighbourhood.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from . import _grid
from .core import (
    MultiFuzzySet,
    Positivity,
    Shape,
    ShapeMismatch,
    in_restricted_class,
    positivity_at,
)
from .topology import Kind, MultiFuzzyTopology, non_null_constants

AXIOMS = ("N1", "N2", "N3", "N4", "N5")


class InvalidNbdSystem(ValueError):
    def __init__(self, report: "NbdReport"):
        self.report = report
        super().__init__("; ".join(f"{v.axiom}@{v.point}: {v.message}" for v in report.violations[:5]))


class NbdSystem:
    """Per-point families of sets, stored as sorted code arrays."""

    __slots__ = ("shape", "_codes", "_sets")

    def __init__(self, shape: Shape, families: Mapping[str, Iterable[MultiFuzzySet]]):
        codes = {}
        for x in shape.universe:
            members = list(families.get(x, ()))
            for s in members:
                if s.shape != shape:
                    raise ShapeMismatch(f"{s!r} is not over {shape}")
            codes[x] = np.unique(np.array([s.code for s in members], dtype=np.int64))
        unknown = set(families) - set(shape.universe)
        if unknown:
            raise KeyError(f"unknown points {sorted(unknown)}")
        self._init(shape, codes)

    def _init(self, shape, codes):
        self.shape = shape
        for arr in codes.values():
            arr.flags.writeable = False
        self._codes = codes
        self._sets = {}

    @classmethod
    def from_codes(cls, shape: Shape, codes: Mapping[str, np.ndarray]) -> "NbdSystem":
        obj = cls.__new__(cls)
        obj._init(shape, {x: np.unique(np.asarray(codes[x], dtype=np.int64)) for x in shape.universe})
        return obj

    def codes(self, x: str) -> np.ndarray:
        return self._codes[x]

    def digits(self, x: str) -> np.ndarray:
        return _grid.decode(self._codes[x], self.shape)

    def family(self, x: str) -> tuple[MultiFuzzySet, ...]:
        if x not in self._sets:
            self._sets[x] = _grid.as_sets(self.digits(x), self.shape)
        return self._sets[x]

    def contains(self, x: str, s: MultiFuzzySet) -> bool:
        arr = self._codes[x]
        i = np.searchsorted(arr, s.code)
        return bool(i < len(arr) and arr[i] == s.code)

    def replace(self, x: str, family: Iterable[MultiFuzzySet]) -> "NbdSystem":
        codes = dict(self._codes)
        codes[x] = np.array([s.code for s in family], dtype=np.int64)
        return NbdSystem.from_codes(self.shape, codes)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NbdSystem):
            return NotImplemented
        return self.shape == other.shape and all(
            np.array_equal(self._codes[x], other._codes[x]) for x in self.shape.universe
        )

    def __hash__(self):
        return hash((self.shape, tuple(self._codes[x].tobytes() for x in self.shape.universe)))

    def __repr__(self) -> str:
        sizes = ", ".join(f"{x}:{len(self._codes[x])}" for x in self.shape.universe)
        return f"NbdSystem({sizes})"


def _check_point(tau_or_shape, x: str) -> int:
    shape = getattr(tau_or_shape, "shape", tau_or_shape)
    return shape.universe.index(x)


def is_nbd(f: MultiFuzzySet, x: str, tau: MultiFuzzyTopology) -> bool:
    """Scan the opens for a G below ``f`` that agrees with it, positively, at ``x``."""
    if f.shape != tau.shape:
        raise ShapeMismatch("set and topology have different shapes")
    xi = _check_point(tau, x)
    at_x = f.table[xi]
    if positivity_at(f, x) is not Positivity.ALL_POSITIVE:
        return False
    return any(g.table[xi] == at_x and g <= f for g in tau.opens)


def _level_floors(tau: MultiFuzzyTopology, xi: int) -> dict[tuple[int, ...], np.ndarray]:
    """For each positive tuple t reached at x by some open, the meet of all such opens.

    That meet is itself open, so a set F with F(x) = t is a neighbourhood of x
    exactly when it lies above this floor.
    """
    arr = np.asarray(tau.array)
    at_x = _grid.block(arr, tau.n, xi)
    pos = (at_x > 0).all(axis=1)
    floors = {}
    for t in {tuple(r) for r in at_x[pos].tolist()}:
        rows = arr[pos & (at_x == np.array(t)).all(axis=1)]
        floors[t] = rows.min(axis=0)
    return floors


def _nbd_codes(tau: MultiFuzzyTopology, xi: int) -> np.ndarray:
    key = ("nbd", xi)
    cached = tau._cache.get(key)
    if cached is not None:
        return cached
    shape = tau.shape
    grid = _grid.grid(shape)
    gx = _grid.block(grid, shape.n, xi)
    mask = np.zeros(len(grid), dtype=bool)
    for t, floor in _level_floors(tau, xi).items():
        mask |= (gx == np.array(t)).all(axis=1) & (grid >= floor).all(axis=1)
    codes = np.nonzero(mask)[0].astype(np.int64)  # grid rows are in code order
    codes.flags.writeable = False
    tau._cache[key] = codes
    return codes


def nbd_family(tau: MultiFuzzyTopology, x: str) -> tuple[MultiFuzzySet, ...]:
    """All grid sets that are neighbourhoods of ``x``."""
    xi = _check_point(tau, x)
    return _grid.as_sets(_grid.decode(_nbd_codes(tau, xi), tau.shape), tau.shape)


def nbd_from_topology(tau: MultiFuzzyTopology) -> NbdSystem:
    return NbdSystem.from_codes(
        tau.shape, {x: _nbd_codes(tau, i) for i, x in enumerate(tau.universe)}
    )


@dataclass(frozen=True)
class NbdViolation:
    axiom: str
    point: str
    message: str
    witnesses: tuple[MultiFuzzySet, ...] = ()


@dataclass(frozen=True)
class NbdReport:
    violations: tuple[NbdViolation, ...]
    disabled: frozenset[str] = frozenset()

    @property
    def ok(self) -> bool:
        return not self.violations

    def axioms(self) -> set[str]:
        return {v.axiom for v in self.violations}


def n4_attained(members: np.ndarray, shape: Shape, xi: int) -> np.ndarray:
    """Grid indicator of the N4 premise in attainment form.

    F qualifies when, for every coordinate i, some member M lies below F with
    M_i(x) = F_i(x). Computed per (i, value) as an upward closure on the grid.
    """
    grid = _grid.grid(shape)
    n = shape.n
    result = np.ones(len(grid), dtype=bool)
    for col in range(xi * n, xi * n + n):
        hit = np.zeros(len(grid), dtype=bool)
        for v in range(1, shape.D + 1):
            rows = members[members[:, col] == v]
            if len(rows):
                up = _grid.upset(_grid.indicator(_grid.encode(rows, shape), shape), shape)
                hit |= up & (grid[:, col] == v)
        result &= hit
    return result


def n4_threshold_premise(members: np.ndarray, cand: np.ndarray, n: int, xi: int) -> np.ndarray:
    """Threshold form of the N4 premise, with thresholds on the half-step grid.

    For each coordinate i and each r with 0 < r < F_i(x), some member below F
    must exceed r at x. Between two chain values only the half-step matters,
    so r ranges over ``j / 2D`` for ``0 < j < 2 F_i(x)`` (in doubled numerators).
    """
    ok = np.ones(len(cand), dtype=bool)
    for row_i, c in enumerate(cand):
        below = members[(members <= c).all(axis=1)] if len(members) else members
        for i in range(n):
            col = xi * n + i
            target = 2 * int(c[col])
            for r2 in range(1, target):
                if not (2 * below[:, col] > r2).any():
                    ok[row_i] = False
                    break
            if not ok[row_i]:
                break
    return ok


def verify_nbd_axioms(
    system: NbdSystem,
    disabled: Iterable[str] = (),
    max_witnesses: int = 3,
) -> NbdReport:
    """Check N1..N5 at every point; ``disabled`` axioms are skipped."""
    disabled = frozenset(disabled)
    unknown = disabled - set(AXIOMS)
    if unknown:
        raise ValueError(f"unknown axioms {sorted(unknown)}")
    shape = system.shape
    n, w = shape.n, shape.width
    out: list[NbdViolation] = []
    lookups = {x: _grid.lookup(system.codes(x), shape) for x in shape.universe}

    def report(axiom, x, message, rows):
        out.append(NbdViolation(axiom, x, message, _grid.as_sets(rows[:max_witnesses], shape)))

    for xi, x in enumerate(shape.universe):
        members = system.digits(x)
        inside = lookups[x]

        if "N1" not in disabled:
            consts = non_null_constants(shape)
            missing = [c for c in consts if not system.contains(x, c)]
            if missing:
                report("N1", x, f"{len(missing)} non-null constant(s) missing",
                       _grid.as_array(missing, shape))

        if "N2" not in disabled:
            bad = ~_grid.positive_at(members, n, xi)
            if bad.any():
                report("N2", x, f"{int(bad.sum())} member(s) not positive at the point", members[bad])

        if "N3" not in disabled and len(members):
            escapes = []
            for sl in _grid.chunks(len(members), len(members), w):
                m = np.minimum(members[sl, None, :], members[None, :, :]).reshape(-1, w)
                miss = ~inside(_grid.encode(m, shape))
                if miss.any():
                    escapes.append(m[miss])
            if escapes:
                rows = np.concatenate(escapes)
                report("N3", x, f"{len(rows)} meet(s) of members fall outside", rows)

        if "N4" not in disabled:
            grid = _grid.grid(shape)
            premise = n4_attained(members, shape, xi) & _grid.positive_at(grid, n, xi)
            premise &= ~inside(np.arange(len(grid)))
            if premise.any():
                report("N4", x, f"{int(premise.sum())} set(s) meet the premise but are not members",
                       grid[premise])

        if "N5" not in disabled and len(members):
            good = np.ones(len(members), dtype=bool)
            for yi, y in enumerate(shape.universe):
                pos_y = _grid.positive_at(members, n, yi)
                good &= ~pos_y | lookups[y](system.codes(x))
            inner = members[good]
            if len(inner) == 0:
                report("N5", x, "no member qualifies as an inner open set", members)
            else:
                lacking = ~_dominated_at(inner, members, shape, xi)
                if lacking.any():
                    report("N5", x, f"{int(lacking.sum())} member(s) have no inner open set",
                           members[lacking])
    return NbdReport(tuple(out), disabled)


def _dominated_at(lower: np.ndarray, upper: np.ndarray, shape: Shape, xi: int) -> np.ndarray:
    """For each row of ``upper``: is some row of ``lower`` below it and equal to it at x?"""
    n = shape.n
    out = np.zeros(len(upper), dtype=bool)
    lower_x = _grid.block(lower, n, xi)
    upper_x = _grid.block(upper, n, xi)
    upper_codes = _grid.encode(upper, shape)
    for t in {tuple(r) for r in lower_x.tolist()}:
        t_arr = np.array(t)
        group = lower[(lower_x == t_arr).all(axis=1)]
        up = _grid.upset(_grid.indicator(_grid.encode(group, shape), shape), shape)
        level = (upper_x == t_arr).all(axis=1)
        out |= level & up[upper_codes]
    return out


def topology_from_nbd(system: NbdSystem, verify: bool = True, disabled: Iterable[str] = ()) -> MultiFuzzyTopology:
    """Sets that belong to the system at every point where they are positive, plus the null set."""
    if verify:
        report = verify_nbd_axioms(system, disabled)
        if not report.ok:
            raise InvalidNbdSystem(report)
    shape = system.shape
    grid = _grid.grid(shape)
    cand = grid[_grid.restricted_mask(grid, shape)]
    codes = _grid.encode(cand, shape)
    keep = np.ones(len(cand), dtype=bool)
    for xi, x in enumerate(shape.universe):
        pos = _grid.positive_at(cand, shape.n, xi)
        keep &= ~pos | _grid.lookup(system.codes(x), shape)(codes)
    keep |= ~cand.any(axis=1)
    return MultiFuzzyTopology(shape, _grid.as_sets(cand[keep], shape), Kind.LOWEN)


def open_via_nbd(a: MultiFuzzySet, tau: MultiFuzzyTopology) -> bool:
    """Openness through local witnesses: every positive point has an open below ``a`` agreeing there."""
    if a.shape != tau.shape:
        raise ShapeMismatch("set and topology have different shapes")
    if not in_restricted_class(a):
        raise ValueError(f"{a!r} mixes zero and positive grades at a point")
    for xi, row in enumerate(a.table):
        if all(k > 0 for k in row):
            if not any(g.table[xi] == row and g <= a for g in tau.opens):
                return False
    return True
