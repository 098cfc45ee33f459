"""Lowen-type and Chang-type multi-fuzzy topologies on finite grids."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as cartesian
from typing import Iterable, Sequence

import numpy as np

from . import _grid
from .core import (
    MultiFuzzySet,
    Shape,
    ShapeMismatch,
    absolute,
    canonical,
    complement,
    constant_numerators,
    in_restricted_class,
    null,
)


class Kind(str, enum.Enum):
    LOWEN = "lowen"
    CHANG = "chang"


class AxiomViolation(ValueError):
    def __init__(self, report: "AxiomReport"):
        self.report = report
        super().__init__("; ".join(v.message for v in report.violations[:5]))


class NotASubfamily(ValueError):
    pass


def non_null_constants(shape: Shape) -> tuple[MultiFuzzySet, ...]:
    top = shape.D
    return tuple(
        constant_numerators(shape, row)
        for row in cartesian(range(1, top + 1), repeat=shape.n)
    )


@dataclass(frozen=True)
class MultiFuzzyTopology:
    """A family of open sets over one shape.

    The constructor only canonicalizes (dedupe, sort); use :func:`checked`
    or :func:`generate` when the axioms must be enforced.
    """

    shape: Shape
    opens: tuple[MultiFuzzySet, ...]
    kind: Kind = Kind.LOWEN
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        for g in self.opens:
            if g.shape != self.shape:
                raise ShapeMismatch(f"open {g!r} is not over {self.shape}")
        object.__setattr__(self, "opens", canonical(self.opens))
        object.__setattr__(self, "kind", Kind(self.kind))

    @cached_property
    def array(self) -> np.ndarray:
        arr = _grid.as_array(self.opens, self.shape)
        arr.flags.writeable = False
        return arr

    @cached_property
    def codes(self) -> frozenset[int]:
        return frozenset(s.code for s in self.opens)

    @property
    def universe(self):
        return self.shape.universe

    @property
    def n(self) -> int:
        return self.shape.n

    @property
    def chain(self):
        return self.shape.chain

    def __contains__(self, s: MultiFuzzySet) -> bool:
        return s.shape == self.shape and s.code in self.codes

    def __iter__(self):
        return iter(self.opens)

    def __len__(self) -> int:
        return len(self.opens)

    def __hash__(self) -> int:
        return hash((self.shape, self.kind, self.codes))

    def closed_sets(self) -> tuple[MultiFuzzySet, ...]:
        return canonical(complement(g) for g in self.opens)


@dataclass(frozen=True)
class Violation:
    rule: str
    message: str
    witnesses: tuple[MultiFuzzySet, ...] = ()


@dataclass(frozen=True)
class AxiomReport:
    kind: Kind
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}


def _check_shapes(family: Sequence[MultiFuzzySet]) -> Shape:
    if not family:
        raise ValueError("empty family has no shape")
    shape = family[0].shape
    for s in family:
        if s.shape != shape:
            raise ShapeMismatch(f"{s!r} is not over {shape}")
    return shape


def verify_axioms(
    candidate: Iterable[MultiFuzzySet],
    kind: Kind | str = Kind.LOWEN,
    shape: Shape | None = None,
    max_witnesses: int = 3,
) -> AxiomReport:
    """Check a family against the topology axioms of ``kind``.

    Arbitrary-union closure is checked as pairwise-join closure plus the join
    of the whole family, which is equivalent for finite families.
    """
    kind = Kind(kind)
    family = canonical(candidate)
    if shape is None:
        shape = _check_shapes(family)
    elif family:
        for s in family:
            if s.shape != shape:
                raise ShapeMismatch(f"{s!r} is not over {shape}")
    present = {s.code for s in family}
    out: list[Violation] = []

    if kind is Kind.LOWEN:
        outside = [s for s in family if not in_restricted_class(s)]
        if outside:
            out.append(Violation("restricted-class", f"{len(outside)} set(s) mix zero and positive grades at a point", tuple(outside[:max_witnesses])))

    required = [null(shape)]
    if kind is Kind.LOWEN:
        required += non_null_constants(shape)
    else:
        required.append(absolute(shape))
    for r in required:
        if r.code not in present:
            label = "missing-null" if r == required[0] else ("missing-constant" if kind is Kind.LOWEN else "missing-absolute")
            out.append(Violation(label, f"missing required member {r!r}", (r,)))

    if family:
        arr = _grid.as_array(family, shape)
        contains = _grid.lookup(np.array(sorted(present), dtype=np.int64), shape)
        for rule, op in (("meet-closure", np.minimum), ("join-closure", np.maximum)):
            bad = _pairwise_escapes(arr, shape, op, contains)
            if bad:
                out.append(Violation(rule, f"{len(bad)} pair(s) leave the family under {rule.split('-')[0]}",
                                     tuple(s for pair in bad[:max_witnesses] for s in pair)))
        total = arr.max(axis=0)
        if not contains(np.array([_grid.encode(total[None, :], shape)[0]]))[0]:
            out.append(Violation("total-join", "join of the whole family is missing",
                                 _grid.as_sets(total[None, :], shape)))
    return AxiomReport(kind, tuple(out))


def _pairwise_escapes(arr, shape, op, contains) -> list[tuple[MultiFuzzySet, MultiFuzzySet]]:
    m, w = arr.shape
    bad = []
    for sl in _grid.chunks(m, m, w):
        combined = op(arr[sl, None, :], arr[None, :, :])
        codes = _grid.encode(combined.reshape(-1, w), shape).reshape(combined.shape[:2])
        miss = ~contains(codes)
        for i, j in zip(*np.nonzero(miss)):
            i = i + sl.start
            if i < j:
                pair = _grid.as_sets(arr[[i]], shape) + _grid.as_sets(arr[[j]], shape)
                bad.append(pair)
    return bad


def checked(shape: Shape, opens: Iterable[MultiFuzzySet], kind: Kind | str = Kind.LOWEN) -> MultiFuzzyTopology:
    opens = tuple(opens)
    report = verify_axioms(opens, kind, shape)
    if not report.ok:
        raise AxiomViolation(report)
    return MultiFuzzyTopology(shape, opens, Kind(kind))


def generate(
    shape: Shape, seeds: Iterable[MultiFuzzySet] = (), kind: Kind | str = Kind.LOWEN
) -> MultiFuzzyTopology:
    """Smallest topology of ``kind`` containing ``seeds``."""
    kind = Kind(kind)
    seeds = tuple(seeds)
    for s in seeds:
        if s.shape != shape:
            raise ShapeMismatch(f"seed {s!r} is not over {shape}")
        if kind is Kind.LOWEN and not in_restricted_class(s):
            raise ValueError(f"seed {s!r} mixes zero and positive grades at a point")
    start = list(seeds) + [null(shape)]
    start += non_null_constants(shape) if kind is Kind.LOWEN else [absolute(shape)]
    arr = _grid.close(_grid.as_array(start, shape), shape)
    return MultiFuzzyTopology(shape, _grid.as_sets(arr, shape), kind)


def generate_plain(shape: Shape, seeds: Iterable[MultiFuzzySet]) -> tuple[MultiFuzzySet, ...]:
    """Meet/join closure of ``seeds`` plus the null set, with no required constants."""
    start = list(seeds) + [null(shape)]
    return _grid.as_sets(_grid.close(_grid.as_array(start, shape), shape), shape)


def _join_below(arr: np.ndarray, targets: np.ndarray, strict: bool) -> np.ndarray:
    """For each target, the join of the rows of ``arr`` lying below it (zeros if none)."""
    w = arr.shape[1]
    out = np.zeros_like(targets)
    for sl in _grid.chunks(len(targets), len(arr), w):
        t = targets[sl, None, :]
        below = (arr[None, :, :] <= t).all(axis=2)
        if strict:
            below &= (arr[None, :, :] != t).any(axis=2)
        masked = np.where(below[:, :, None], arr[None, :, :], 0)
        out[sl] = masked.max(axis=1) if len(arr) else 0
    return out


def is_open_base(base: Iterable[MultiFuzzySet], tau: MultiFuzzyTopology) -> bool:
    """Whether every nonnull open is a join of members of ``base``.

    The null set counts as the empty join.
    """
    base = canonical(base)
    stray = [b for b in base if b not in tau]
    if stray:
        raise NotASubfamily(f"{len(stray)} base member(s) are not open, e.g. {stray[0]!r}")
    if not base:
        return all(not any(g.vector) for g in tau.opens)
    barr = _grid.as_array(base, tau.shape)
    reach = _join_below(barr, np.asarray(tau.array), strict=False)
    return bool((reach == tau.array).all())


def minimal_base(tau: MultiFuzzyTopology) -> tuple[MultiFuzzySet, ...]:
    """The join-irreducible nonnull opens."""
    arr = np.asarray(tau.array)
    below = _join_below(arr, arr, strict=True)
    keep = (below != arr).any(axis=1) & (arr > 0).any(axis=1)
    return _grid.as_sets(arr[keep], tau.shape)


def intersect_topologies(family: Iterable[MultiFuzzyTopology]) -> MultiFuzzyTopology:
    family = list(family)
    if not family:
        raise ValueError("need at least one topology")
    first = family[0]
    for t in family[1:]:
        if t.shape != first.shape or t.kind != first.kind:
            raise ShapeMismatch("topologies differ in shape or kind")
    common = set(first.codes)
    for t in family[1:]:
        common &= t.codes
    result = MultiFuzzyTopology(first.shape, tuple(g for g in first.opens if g.code in common), first.kind)
    report = verify_axioms(result.opens, result.kind, result.shape)
    if not report.ok:
        raise AxiomViolation(report)
    return result


def is_closed(f: MultiFuzzySet, tau: MultiFuzzyTopology) -> bool:
    if f.shape != tau.shape:
        raise ShapeMismatch("set and topology have different shapes")
    return complement(f) in tau
