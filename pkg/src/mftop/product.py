"""Binary products, projections, covers and compactness."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from . import _grid
from .core import (
    MultiFuzzySet,
    PointMap,
    Shape,
    ShapeMismatch,
    canonical,
    product_set,
    product_universe,
)
from .morphisms import SpaceMap, compose, is_continuous, is_open_map
from .topology import (
    Kind,
    MultiFuzzyTopology,
    NotASubfamily,
    generate,
    is_open_base,
    minimal_base,
)


class InvariantBroken(AssertionError):
    """A property that holds for every finite-grid space failed on an instance."""


class NotACover(ValueError):
    def __init__(self, point: str, coordinate: int, best: int, needed: int, denominator: int):
        self.point, self.coordinate = point, coordinate
        self.best, self.needed = best, needed
        super().__init__(
            f"not a cover at point {point!r}, coordinate {coordinate}: "
            f"sup is {best}/{denominator}, needs {needed}/{denominator}"
        )


@dataclass(frozen=True)
class ProductSpace:
    left: MultiFuzzyTopology
    right: MultiFuzzyTopology
    topology: MultiFuzzyTopology
    basis: tuple[MultiFuzzySet, ...]
    pairs: dict = field(compare=False, hash=False, repr=False)

    @property
    def shape(self) -> Shape:
        return self.topology.shape

    @property
    def universe(self):
        return self.topology.universe


def _check_factors(s1: MultiFuzzyTopology, s2: MultiFuzzyTopology) -> None:
    if s1.n != s2.n or s1.chain != s2.chain:
        raise ShapeMismatch("factors must share dimension and chain")


def product_topology(s1: MultiFuzzyTopology, s2: MultiFuzzyTopology, verify: bool = True) -> ProductSpace:
    """Topology generated by all products ``F x G`` of factor opens."""
    _check_factors(s1, s2)
    universe, pairs = product_universe(s1.universe, s2.universe)
    shape = Shape(universe, s1.n, s1.chain)
    basis = canonical(product_set(f, g) for f in s1.opens for g in s2.opens)
    kind = Kind.LOWEN if s1.kind is Kind.LOWEN and s2.kind is Kind.LOWEN else Kind.CHANG
    tau = generate(shape, basis, kind)
    if verify and not is_open_base(basis, tau):
        raise InvariantBroken("factor products do not form an open base of their closure")
    return ProductSpace(s1, s2, tau, basis, pairs)


def projection(p: ProductSpace, j: int, verify: bool = True) -> SpaceMap:
    if j not in (1, 2):
        raise ValueError("projection index must be 1 or 2")
    factor = p.left if j == 1 else p.right
    target = tuple(p.pairs[label][j - 1] for label in p.universe)
    m = SpaceMap(PointMap(p.universe, factor.universe, target), p.topology, factor)
    if verify and not (is_continuous(m) and is_open_map(m)):
        raise InvariantBroken(f"projection {j} is not continuous and open")
    return m


def projection_subbase(p: ProductSpace, sides: Sequence[int] = (1, 2)) -> tuple[MultiFuzzySet, ...]:
    out = []
    for j in sides:
        pi = projection(p, j, verify=False)
        out.extend(pi.preimage(g) for g in pi.codomain.opens)
    return canonical(out)


def smallest_topology_check(p: ProductSpace, sides: Sequence[int] = (1, 2)) -> bool:
    """Whether the projection preimages generate exactly the product topology."""
    return generate(p.shape, projection_subbase(p, sides), p.topology.kind) == p.topology


def continuous_via_projections(m: SpaceMap, p: ProductSpace) -> bool:
    """Continuity of a map into ``p`` judged through both projections."""
    if m.codomain != p.topology:
        raise ShapeMismatch("map does not land in the product space")
    return all(is_continuous(compose(m, projection(p, j, verify=False))) for j in (1, 2))


def slice_embedding(p: ProductSpace, a: str, side: str = "left", verify: bool = True) -> SpaceMap:
    """``x -> (a, x)`` for ``side='left'`` (a in the left factor), ``x -> (x, a)`` otherwise."""
    index = {pair: label for label, pair in p.pairs.items()}
    if side == "left":
        if a not in p.left.universe:
            raise KeyError(a)
        src = p.right
        target = tuple(index[(a, x)] for x in src.universe)
    elif side == "right":
        if a not in p.right.universe:
            raise KeyError(a)
        src = p.left
        target = tuple(index[(x, a)] for x in src.universe)
    else:
        raise ValueError("side must be 'left' or 'right'")
    m = SpaceMap(PointMap(src.universe, p.universe, target), src, p.topology)
    if verify and not (continuous_via_projections(m, p) and is_continuous(m)):
        raise InvariantBroken(f"slice through {a!r} is not continuous")
    return m


@lru_cache(maxsize=4096)
def _cached_product(s1: MultiFuzzyTopology, s2: MultiFuzzyTopology) -> ProductSpace:
    return product_topology(s1, s2, verify=False)


@dataclass(frozen=True)
class ProductMap:
    map: SpaceMap
    domain: ProductSpace
    codomain: ProductSpace


def product_map(m1: SpaceMap, m2: SpaceMap, verify: bool = True) -> ProductMap:
    """``(x1, x2) -> (m1(x1), m2(x2))`` between the product spaces."""
    dom = _cached_product(m1.domain, m2.domain)
    cod = _cached_product(m1.codomain, m2.codomain)
    index = {pair: label for label, pair in cod.pairs.items()}
    target = tuple(index[(m1(x1), m2(x2))] for x1, x2 in (dom.pairs[lbl] for lbl in dom.universe))
    m = SpaceMap(PointMap(dom.universe, cod.universe, target), dom.topology, cod.topology)
    if verify:
        if is_open_map(m1) and is_open_map(m2) and not is_open_map(m):
            raise InvariantBroken("product of open maps is not open")
        if is_continuous(m1) and is_continuous(m2) and not is_continuous(m):
            raise InvariantBroken("product of continuous maps is not continuous")
    return ProductMap(m, dom, cod)


def is_second_countable(space: MultiFuzzyTopology) -> tuple[bool, tuple[MultiFuzzySet, ...]]:
    """Always true on a finite grid; the witness is the minimal base."""
    base = minimal_base(space)
    return is_open_base(base, space), base


def product_base(b1: Iterable[MultiFuzzySet], b2: Iterable[MultiFuzzySet], p: ProductSpace, verify: bool = True) -> tuple[MultiFuzzySet, ...]:
    b1, b2 = canonical(b1), canonical(b2)
    try:
        ok = is_open_base(b1, p.left) and is_open_base(b2, p.right)
    except NotASubfamily as exc:
        raise ValueError(f"factor base is not a subfamily of the opens: {exc}") from exc
    if not ok:
        raise ValueError("factor families are not open bases")
    base = canonical(product_set(f, g) for f in b1 for g in b2)
    if verify and not is_open_base(base, p.topology):
        raise InvariantBroken("products of factor bases do not form a base of the product")
    return base


# covers ---------------------------------------------------------------------


@dataclass(frozen=True)
class Cover:
    """A family claimed to cover either a set (``target`` a set) or a crisp set of points."""

    target: MultiFuzzySet | frozenset
    family: tuple[MultiFuzzySet, ...]

    def __post_init__(self):
        fam = tuple(self.family)
        if not fam:
            raise ValueError("a cover family must be nonempty")
        shape = fam[0].shape
        for s in fam:
            if s.shape != shape:
                raise ShapeMismatch("cover members differ in shape")
        target = self.target
        if isinstance(target, MultiFuzzySet):
            if target.shape != shape:
                raise ShapeMismatch("target and family differ in shape")
        else:
            target = frozenset(target)
            for x in target:
                shape.universe.index(x)
        object.__setattr__(self, "family", fam)
        object.__setattr__(self, "target", target)

    @property
    def shape(self) -> Shape:
        return self.family[0].shape

    def requirement(self) -> np.ndarray:
        """Grade each flattened (point, coordinate) slot must reach."""
        shape = self.shape
        if isinstance(self.target, MultiFuzzySet):
            return np.array(self.target.vector, dtype=_grid.DTYPE)
        req = np.zeros(shape.width, dtype=_grid.DTYPE)
        n = shape.n
        for x in self.target:
            xi = shape.universe.index(x)
            req[xi * n : (xi + 1) * n] = shape.D
        return req


def _cover_gap(cover: Cover, arr: np.ndarray):
    req = cover.requirement()
    best = arr.max(axis=0) if len(arr) else np.zeros_like(req)
    short = np.nonzero(best < req)[0]
    if len(short) == 0:
        return None
    slot = int(short[0])
    n = cover.shape.n
    return cover.shape.universe.points[slot // n], slot % n, int(best[slot]), int(req[slot])


def is_cover(cover: Cover) -> bool:
    return _cover_gap(cover, _grid.as_array(cover.family, cover.shape)) is None


def find_finite_subcover(
    cover: Cover, topology: MultiFuzzyTopology | None = None, exhaustive_limit: int = 12
) -> tuple[MultiFuzzySet, ...]:
    """A smallest subfamily that still covers.

    Greedy by coverage gain, then an exhaustive search below the greedy size
    when the family has at most ``exhaustive_limit`` distinct members.
    """
    family = canonical(cover.family)
    if topology is not None:
        stray = [s for s in family if s not in topology]
        if stray:
            raise NotASubfamily(f"{stray[0]!r} is not open")
    shape = cover.shape
    arr = _grid.as_array(family, shape)
    gap = _cover_gap(cover, arr)
    if gap is not None:
        raise NotACover(*gap, shape.D)
    req = cover.requirement()
    hits = arr >= req  # (members, slots)
    need = req > 0
    covered = ~need
    chosen: list[int] = []
    while not covered.all():
        gain = (hits & ~covered).sum(axis=1)
        best = int(np.argmax(gain))
        chosen.append(best)
        covered |= hits[best]
    if len(family) <= exhaustive_limit:
        useful = [i for i in range(len(family)) if (hits[i] & need).any()]
        for size in range(0, len(chosen)):
            found = next(
                (c for c in combinations(useful, size) if (hits[list(c)].any(axis=0) | ~need).all()),
                None,
            )
            if found is not None:
                chosen = list(found)
                break
    if not chosen:
        # nothing is required; any single member is a (trivial) subcover
        chosen = [0]
    return tuple(family[i] for i in sorted(chosen))


@dataclass(frozen=True)
class CompactnessReport:
    compact: bool
    vacuous: bool
    exhaustive: bool
    covers_checked: int
    families_examined: int
    largest_minimal_subcover: int
    basic_pattern_checked: int = 0
    basic_pattern_ok: bool = True
    failures: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "compact": self.compact,
            "vacuous": self.vacuous,
            "exhaustive": self.exhaustive,
            "covers_checked": self.covers_checked,
            "families_examined": self.families_examined,
            "largest_minimal_subcover": self.largest_minimal_subcover,
            "basic_pattern_checked": self.basic_pattern_checked,
            "basic_pattern_ok": self.basic_pattern_ok,
            "failures": list(self.failures),
        }


def _families(members: Sequence, max_size: int, limit: int, samples: int, rng: random.Random, hits=None, need=None):
    """Yield index tuples: all families up to ``max_size`` if few enough, else samples."""
    m = len(members)
    total = sum(comb(m, k) for k in range(1, max_size + 1))
    if total <= limit:
        for k in range(1, max_size + 1):
            yield from combinations(range(m), k)
        return
    # sampled: build covers constructively, then pad with random members
    for _ in range(samples):
        chosen: list[int] = []
        covered = ~need.copy()
        while not covered.all() and len(chosen) < max_size:
            slots = np.nonzero(~covered)[0]
            slot = slots[rng.randrange(len(slots))]
            options = np.nonzero(hits[:, slot])[0]
            if len(options) == 0:
                break
            pick = int(options[rng.randrange(len(options))])
            chosen.append(pick)
            covered |= hits[pick]
        pad = rng.randint(len(chosen), max_size)
        while len(chosen) < pad:
            chosen.append(rng.randrange(m))
        yield tuple(sorted(set(chosen)))


def check_compact(
    space: MultiFuzzyTopology | ProductSpace,
    max_family_size: int = 4,
    exhaustive_limit: int = 20000,
    samples: int = 500,
    seed: int = 0,
) -> CompactnessReport:
    """Extract finite subcovers from the open covers of the whole space.

    Families up to ``max_family_size`` are enumerated when there are at most
    ``exhaustive_limit`` of them, otherwise ``samples`` covers are drawn with
    a seeded generator. Products also get the basic-cover pattern check.
    """
    product = space if isinstance(space, ProductSpace) else None
    tau = product.topology if product else space
    rng = random.Random(seed)
    shape = tau.shape
    opens = tau.opens
    arr = np.asarray(tau.array)
    whole = Cover(frozenset(shape.universe), opens)
    vacuous = not is_cover(whole)
    req = whole.requirement()
    hits = arr >= req
    need = req > 0
    total = sum(comb(len(opens), k) for k in range(1, max_family_size + 1))
    exhaustive = total <= exhaustive_limit
    checked = examined = largest = 0
    failures: list[str] = []
    if not vacuous:
        for idx in _families(opens, max_family_size, exhaustive_limit, samples, rng, hits, need):
            examined += 1
            if not (hits[list(idx)].any(axis=0) | ~need).all():
                continue
            checked += 1
            try:
                sub = find_finite_subcover(Cover(whole.target, tuple(opens[i] for i in idx)), tau)
            except (NotACover, NotASubfamily) as exc:
                failures.append(str(exc))
                continue
            largest = max(largest, len(sub))
    pattern_checked, pattern_ok = 0, True
    if product is not None and not vacuous:
        pattern_checked, bad = _basic_cover_pattern(product, max_family_size, exhaustive_limit, samples, rng)
        pattern_ok = not bad
        failures.extend(bad)
    return CompactnessReport(
        compact=not failures,
        vacuous=vacuous,
        exhaustive=exhaustive,
        covers_checked=checked,
        families_examined=examined,
        largest_minimal_subcover=largest,
        basic_pattern_checked=pattern_checked,
        basic_pattern_ok=pattern_ok,
        failures=tuple(failures),
    )


def _basic_cover_pattern(p: ProductSpace, max_size, limit, samples, rng) -> tuple[int, list[str]]:
    """Basic covers {F_m x G_m} reduce to finitely many whose factor joins cover each factor."""
    pairs = [(f, g) for f in p.left.opens for g in p.right.opens]
    boxes = [product_set(f, g) for f, g in pairs]
    shape = p.shape
    arr = _grid.as_array(boxes, shape)
    whole = Cover(frozenset(shape.universe), tuple(boxes))
    req = whole.requirement()
    hits, need = arr >= req, req > 0
    left_x = frozenset(p.left.universe)
    right_x = frozenset(p.right.universe)
    count, bad = 0, []
    seen = set()
    for idx in _families(boxes, max_size, limit, samples, rng, hits, need):
        if idx in seen or not (hits[list(idx)].any(axis=0) | ~need).all():
            continue
        seen.add(idx)
        count += 1
        sub = find_finite_subcover(Cover(whole.target, tuple(boxes[i] for i in idx)))
        used = [pairs[i] for i in idx if boxes[i] in sub]
        fs = tuple(f for f, _ in used)
        gs = tuple(g for _, g in used)
        if not (is_cover(Cover(left_x, fs)) and is_cover(Cover(right_x, gs))):
            bad.append(f"basic cover {idx} has a subcover whose factor joins do not cover")
    return count, bad


__all__ = [
    "ProductSpace",
    "ProductMap",
    "Cover",
    "CompactnessReport",
    "NotACover",
    "InvariantBroken",
    "product_topology",
    "projection",
    "projection_subbase",
    "smallest_topology_check",
    "continuous_via_projections",
    "slice_embedding",
    "product_map",
    "is_second_countable",
    "product_base",
    "is_cover",
    "find_finite_subcover",
    "check_compact",
]
