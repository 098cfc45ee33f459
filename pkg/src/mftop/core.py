"""Grades, universes and multi-fuzzy sets with their lattice algebra.

Every membership grade lives on a finite chain ``{0, 1/D, ..., 1}`` and is
stored as its integer numerator ``k``; the chain turns numerators back into
exact :class:`fractions.Fraction` values at the edges (parsing, display).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "GradeError",
    "ShapeMismatch",
    "UnknownPoint",
    "GradeChain",
    "Universe",
    "Shape",
    "MultiFuzzySet",
    "PointMap",
    "Positivity",
    "meet",
    "join",
    "complement",
    "leq",
    "positivity_at",
    "in_restricted_class",
    "constant",
    "null",
    "absolute",
    "image",
    "preimage",
    "pair_label",
    "product_universe",
    "product_set",
    "product_mixed",
]


class GradeError(ValueError):
    """A grade that does not lie on the chain."""


class ShapeMismatch(ValueError):
    """Operands disagree on universe, dimension or chain."""


class UnknownPoint(KeyError):
    pass


_GRADE_RE = re.compile(r"^\s*(\d+)\s*(?:/\s*(\d+)\s*)?$")


@dataclass(frozen=True)
class GradeChain:
    """The chain ``{k/D : 0 <= k <= D}``."""

    denominator: int

    def __post_init__(self):
        if not isinstance(self.denominator, int) or self.denominator < 1:
            raise ValueError(f"denominator must be a positive integer, got {self.denominator!r}")

    @property
    def top(self) -> int:
        return self.denominator

    def __len__(self) -> int:
        return self.denominator + 1

    def __iter__(self) -> Iterator[Fraction]:
        return (Fraction(k, self.denominator) for k in range(self.denominator + 1))

    def value(self, k: int) -> Fraction:
        return Fraction(k, self.denominator)

    def index(self, grade) -> int:
        """Numerator of ``grade`` on this chain.

        Accepts Fractions, ints (0 or 1), exactly representable floats and
        strings of the form ``"k/D"`` or ``"k"``.
        """
        if isinstance(grade, str):
            m = _GRADE_RE.match(grade)
            if m is None:
                raise GradeError(f"grade {grade!r} is not of the form k/D")
            num, den = int(m.group(1)), int(m.group(2) or 1)
            if den == 0:
                raise GradeError(f"grade {grade!r} has zero denominator")
            value = Fraction(num, den)
        elif isinstance(grade, bool):
            raise GradeError(f"boolean {grade!r} is not a grade")
        else:
            try:
                value = Fraction(grade)
            except (TypeError, ValueError) as exc:
                raise GradeError(f"cannot read {grade!r} as a grade") from exc
        scaled = value * self.denominator
        if scaled.denominator != 1 or not 0 <= scaled <= self.denominator:
            raise GradeError(f"grade {grade!r} not on chain with D={self.denominator}")
        return int(scaled)

    def format(self, k: int) -> str:
        return f"{k}/{self.denominator}"

    def parse(self, text: str) -> int:
        return self.index(text)


@dataclass(frozen=True)
class Universe:
    """Finite, nonempty set of point labels kept in sorted order."""

    points: tuple[str, ...]

    def __post_init__(self):
        pts = tuple(self.points)
        if not pts:
            raise ValueError("universe must be nonempty")
        if len(set(pts)) != len(pts):
            raise ValueError(f"duplicate point labels in {pts!r}")
        for p in pts:
            if not isinstance(p, str):
                raise TypeError(f"point labels must be strings, got {p!r}")
        object.__setattr__(self, "points", tuple(sorted(pts)))

    @cached_property
    def _positions(self) -> dict[str, int]:
        return {p: i for i, p in enumerate(self.points)}

    def index(self, x: str) -> int:
        try:
            return self._positions[x]
        except KeyError:
            raise UnknownPoint(x) from None

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[str]:
        return iter(self.points)

    def __contains__(self, x) -> bool:
        return x in self._positions


@dataclass(frozen=True)
class Shape:
    """Universe, dimension and chain shared by every set in a space."""

    universe: Universe
    n: int
    chain: GradeChain

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.n!r}")

    @classmethod
    def of(cls, points: Iterable[str], n: int, denominator: int) -> "Shape":
        return cls(Universe(tuple(points)), n, GradeChain(denominator))

    @property
    def width(self) -> int:
        """Length of the flattened (point, coordinate) vector."""
        return len(self.universe) * self.n

    @property
    def D(self) -> int:
        return self.chain.denominator

    def make(self, grades: Mapping[str, Sequence] | None = None, **by_point) -> "MultiFuzzySet":
        """Build a set from ``{point: grades}``; unlisted points get the zero tuple.

        Grades are anything :meth:`GradeChain.index` accepts. A bare scalar is
        allowed when ``n == 1``.
        """
        given = dict(grades or {})
        given.update(by_point)
        rows = [(0,) * self.n] * len(self.universe)
        for x, tup in given.items():
            if not isinstance(tup, (tuple, list)):
                tup = (tup,)
            if len(tup) != self.n:
                raise ShapeMismatch(f"point {x!r}: expected {self.n} grades, got {len(tup)}")
            rows[self.universe.index(x)] = tuple(self.chain.index(g) for g in tup)
        return MultiFuzzySet(self, tuple(rows))


@dataclass(frozen=True)
class MultiFuzzySet:
    """A point-indexed table of grade tuples (numerators over ``shape.D``).

    ``table[i]`` belongs to ``shape.universe.points[i]``.
    """

    shape: Shape
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        table = tuple(tuple(row) for row in self.table)
        if len(table) != len(self.shape.universe):
            raise ShapeMismatch(
                f"table has {len(table)} rows for {len(self.shape.universe)} points"
            )
        top = self.shape.D
        for row in table:
            if len(row) != self.shape.n:
                raise ShapeMismatch(f"tuple {row!r} has length {len(row)}, expected {self.shape.n}")
            for k in row:
                if not isinstance(k, int) or not 0 <= k <= top:
                    raise GradeError(f"numerator {k!r} outside 0..{top}")
        object.__setattr__(self, "table", table)

    @property
    def universe(self) -> Universe:
        return self.shape.universe

    @property
    def n(self) -> int:
        return self.shape.n

    @property
    def chain(self) -> GradeChain:
        return self.shape.chain

    def grades(self, x: str) -> tuple[int, ...]:
        """Numerators at ``x``."""
        return self.table[self.shape.universe.index(x)]

    def membership(self, x: str) -> tuple[Fraction, ...]:
        return tuple(self.chain.value(k) for k in self.grades(x))

    def items(self) -> Iterator[tuple[str, tuple[int, ...]]]:
        return zip(self.shape.universe.points, self.table)

    @cached_property
    def vector(self) -> tuple[int, ...]:
        return tuple(k for row in self.table for k in row)

    @cached_property
    def code(self) -> int:
        base = self.shape.D + 1
        code = 0
        for k in reversed(self.vector):
            code = code * base + k
        return code

    def __and__(self, other: "MultiFuzzySet") -> "MultiFuzzySet":
        return meet(self, other)

    def __or__(self, other: "MultiFuzzySet") -> "MultiFuzzySet":
        return join([self, other])

    def __invert__(self) -> "MultiFuzzySet":
        return complement(self)

    def __le__(self, other: "MultiFuzzySet") -> bool:
        return leq(self, other)

    def __ge__(self, other: "MultiFuzzySet") -> bool:
        return leq(other, self)

    def __lt__(self, other: "MultiFuzzySet") -> bool:
        return leq(self, other) and self != other

    def __gt__(self, other: "MultiFuzzySet") -> bool:
        return leq(other, self) and self != other

    def __repr__(self) -> str:
        chain = self.chain
        body = ", ".join(
            f"{x}:({','.join(chain.format(k) for k in row)})" for x, row in self.items()
        )
        return f"MFS[{body}]"


def _same_shape(a: MultiFuzzySet, b: MultiFuzzySet) -> None:
    if a.shape != b.shape:
        raise ShapeMismatch(f"shape mismatch: {a.shape} vs {b.shape}")


def meet(a: MultiFuzzySet, b: MultiFuzzySet) -> MultiFuzzySet:
    _same_shape(a, b)
    table = tuple(
        tuple(min(p, q) for p, q in zip(ra, rb)) for ra, rb in zip(a.table, b.table)
    )
    return MultiFuzzySet(a.shape, table)


def join(family: Iterable[MultiFuzzySet]) -> MultiFuzzySet:
    """Pointwise, coordinatewise maximum over a nonempty family."""
    members = list(family)
    if not members:
        raise ValueError("join of an empty family is undefined; use null(shape)")
    first = members[0]
    for m in members[1:]:
        _same_shape(first, m)

    def pair(ta, tb):
        return tuple(tuple(max(p, q) for p, q in zip(ra, rb)) for ra, rb in zip(ta, tb))

    return MultiFuzzySet(first.shape, reduce(pair, (m.table for m in members)))


def complement(a: MultiFuzzySet) -> MultiFuzzySet:
    top = a.shape.D
    return MultiFuzzySet(a.shape, tuple(tuple(top - k for k in row) for row in a.table))


def leq(a: MultiFuzzySet, b: MultiFuzzySet) -> bool:
    _same_shape(a, b)
    return all(p <= q for p, q in zip(a.vector, b.vector))


class Positivity(enum.Enum):
    ALL_POSITIVE = "all-positive"
    ALL_ZERO = "all-zero"
    MIXED = "mixed"


def _tuple_positivity(row: tuple[int, ...]) -> Positivity:
    if all(k > 0 for k in row):
        return Positivity.ALL_POSITIVE
    if all(k == 0 for k in row):
        return Positivity.ALL_ZERO
    return Positivity.MIXED


def positivity_at(f: MultiFuzzySet, x: str) -> Positivity:
    return _tuple_positivity(f.grades(x))


def in_restricted_class(f: MultiFuzzySet) -> bool:
    """True when every point carries an all-positive or an all-zero tuple."""
    return all(_tuple_positivity(row) is not Positivity.MIXED for row in f.table)


def constant(shape: Shape, grades: Sequence) -> MultiFuzzySet:
    """Set carrying the same tuple at every point.

    ``grades`` are read with :meth:`GradeChain.index`; pass ints through
    ``Fraction`` or strings if you mean numerators.
    """
    if len(grades) != shape.n:
        raise ShapeMismatch(f"expected {shape.n} grades, got {len(grades)}")
    row = tuple(shape.chain.index(g) for g in grades)
    return MultiFuzzySet(shape, (row,) * len(shape.universe))


def constant_numerators(shape: Shape, row: Sequence[int]) -> MultiFuzzySet:
    return MultiFuzzySet(shape, (tuple(row),) * len(shape.universe))


def is_non_null_constant(f: MultiFuzzySet) -> bool:
    first = f.table[0]
    return all(k > 0 for k in first) and all(row == first for row in f.table)


def null(shape: Shape) -> MultiFuzzySet:
    return constant_numerators(shape, (0,) * shape.n)


def absolute(shape: Shape) -> MultiFuzzySet:
    return constant_numerators(shape, (shape.D,) * shape.n)


@dataclass(frozen=True)
class PointMap:
    """A total function between two universes."""

    domain: Universe
    codomain: Universe
    assignment: tuple[str, ...] = field(repr=False)

    def __post_init__(self):
        target = tuple(self.assignment)
        if len(target) != len(self.domain):
            raise ValueError(
                f"assignment covers {len(target)} points, domain has {len(self.domain)}"
            )
        for y in target:
            if y not in self.codomain:
                raise UnknownPoint(y)
        object.__setattr__(self, "assignment", target)

    @classmethod
    def from_mapping(cls, domain: Universe, codomain: Universe, mapping: Mapping[str, str]) -> "PointMap":
        missing = [x for x in domain if x not in mapping]
        if missing:
            raise ValueError(f"map undefined at {missing}")
        extra = [x for x in mapping if x not in domain]
        if extra:
            raise UnknownPoint(extra[0])
        return cls(domain, codomain, tuple(mapping[x] for x in domain))

    @classmethod
    def identity(cls, universe: Universe) -> "PointMap":
        return cls(universe, universe, universe.points)

    @classmethod
    def const(cls, domain: Universe, codomain: Universe, y: str) -> "PointMap":
        return cls(domain, codomain, (y,) * len(domain))

    def __call__(self, x: str) -> str:
        return self.assignment[self.domain.index(x)]

    def as_dict(self) -> dict[str, str]:
        return dict(zip(self.domain.points, self.assignment))

    @cached_property
    def index_map(self) -> tuple[int, ...]:
        """Codomain index of each domain point, in domain order."""
        return tuple(self.codomain.index(y) for y in self.assignment)

    def fiber(self, y: str) -> tuple[str, ...]:
        return tuple(x for x, fx in zip(self.domain.points, self.assignment) if fx == y)

    def is_injective(self) -> bool:
        return len(set(self.assignment)) == len(self.assignment)

    def is_surjective(self) -> bool:
        return set(self.assignment) == set(self.codomain.points)

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def inverse(self) -> "PointMap":
        if not self.is_bijective():
            raise ValueError("only bijections have an inverse")
        back = {y: x for x, y in self.as_dict().items()}
        return PointMap.from_mapping(self.codomain, self.domain, back)

    def then(self, other: "PointMap") -> "PointMap":
        """``other`` after ``self``."""
        if other.domain != self.codomain:
            raise ShapeMismatch("composition needs matching universes")
        return PointMap(self.domain, other.codomain, tuple(other(y) for y in self.assignment))


def image(f: PointMap, a: MultiFuzzySet) -> MultiFuzzySet:
    """Supremum of ``a`` over each fiber; empty fibers get the zero tuple."""
    if a.universe != f.domain:
        raise ShapeMismatch("set does not live on the map's domain")
    n = a.n
    rows = [[0] * n for _ in f.codomain]
    for row, j in zip(a.table, f.index_map):
        target = rows[j]
        for i, k in enumerate(row):
            if k > target[i]:
                target[i] = k
    shape = Shape(f.codomain, n, a.chain)
    return MultiFuzzySet(shape, tuple(tuple(r) for r in rows))


def preimage(f: PointMap, b: MultiFuzzySet) -> MultiFuzzySet:
    if b.universe != f.codomain:
        raise ShapeMismatch("set does not live on the map's codomain")
    shape = Shape(f.domain, b.n, b.chain)
    return MultiFuzzySet(shape, tuple(b.table[j] for j in f.index_map))


def pair_label(x: str, y: str) -> str:
    return f"({x},{y})"


def product_universe(left: Universe, right: Universe) -> tuple[Universe, dict[str, tuple[str, str]]]:
    """Universe of pair labels plus the label -> (x, y) lookup."""
    pairs = {pair_label(x, y): (x, y) for x in left for y in right}
    if len(pairs) != len(left) * len(right):
        raise ValueError("pair labels collide; avoid commas and parentheses in point labels")
    return Universe(tuple(pairs)), pairs


def _product(f: MultiFuzzySet, g: MultiFuzzySet, row_of) -> MultiFuzzySet:
    if f.chain != g.chain:
        raise ShapeMismatch("product factors must share a chain")
    universe, pairs = product_universe(f.universe, g.universe)
    rows = tuple(row_of(f.grades(x), g.grades(y)) for x, y in (pairs[p] for p in universe))
    return MultiFuzzySet(Shape(universe, g.n, g.chain), rows)


def product_set(f: MultiFuzzySet, g: MultiFuzzySet) -> MultiFuzzySet:
    """``(F x G)(x, y)_i = min(F_i(x), G_i(y))``."""
    if f.n != g.n:
        raise ShapeMismatch(f"dimensions differ: {f.n} vs {g.n}")
    return _product(f, g, lambda r, s: tuple(min(p, q) for p, q in zip(r, s)))


def product_mixed(f: MultiFuzzySet, g: MultiFuzzySet) -> MultiFuzzySet:
    """Product of a one-dimensional ``f`` with an n-dimensional ``g``."""
    if f.n != 1:
        raise ShapeMismatch(f"left factor must be one-dimensional, got n={f.n}")
    return _product(f, g, lambda r, s: tuple(min(r[0], q) for q in s))


def canonical(family: Iterable[MultiFuzzySet]) -> tuple[MultiFuzzySet, ...]:
    """Deduplicate and sort by table."""
    return tuple(sorted(set(family), key=lambda s: s.table))
