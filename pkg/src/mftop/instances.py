"""Small spaces and maps for property checks, drawn at random or enumerated."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from . import _grid
from .core import MultiFuzzySet, PointMap, Shape, Universe
from .topology import Kind, MultiFuzzyTopology, generate, generate_plain


@dataclass(frozen=True)
class Bounds:
    max_points: int = 2
    max_n: int = 1
    max_d: int = 2

    def is_small(self) -> bool:
        """Within the range where every instance is enumerated."""
        return self.max_points <= 2 and self.max_n <= 1 and self.max_d <= 2


def labels(count: int, prefix: str = "p") -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(count))


def random_shape(rng: random.Random, bounds: Bounds, prefix: str = "p", n: int | None = None, d: int | None = None) -> Shape:
    return Shape.of(
        labels(rng.randint(1, bounds.max_points), prefix),
        n if n is not None else rng.randint(1, bounds.max_n),
        d if d is not None else rng.randint(1, bounds.max_d),
    )


def restricted_sets(shape: Shape) -> tuple[MultiFuzzySet, ...]:
    grid = _grid.grid(shape)
    return _grid.as_sets(grid[_grid.restricted_mask(grid, shape)], shape)


def all_sets(shape: Shape) -> tuple[MultiFuzzySet, ...]:
    return _grid.as_sets(_grid.grid(shape), shape)


def random_set(rng: random.Random, shape: Shape) -> MultiFuzzySet:
    top = shape.D
    return MultiFuzzySet(
        shape, tuple(tuple(rng.randint(0, top) for _ in range(shape.n)) for _ in shape.universe)
    )


def random_restricted_set(rng: random.Random, shape: Shape) -> MultiFuzzySet:
    top = shape.D
    rows = []
    for _ in shape.universe:
        if rng.random() < 0.25:
            rows.append((0,) * shape.n)
        else:
            rows.append(tuple(rng.randint(1, top) for _ in range(shape.n)))
    return MultiFuzzySet(shape, tuple(rows))


def random_topology(rng: random.Random, shape: Shape, max_seeds: int = 3) -> MultiFuzzyTopology:
    """Closure of a few random restricted-class seeds."""
    seeds = [random_restricted_set(rng, shape) for _ in range(rng.randint(0, max_seeds))]
    return generate(shape, seeds, Kind.LOWEN)


def random_map(rng: random.Random, domain: Universe, codomain: Universe) -> PointMap:
    return PointMap(domain, codomain, tuple(rng.choice(codomain.points) for _ in domain))


def all_maps(domain: Universe, codomain: Universe):
    for target in product(codomain.points, repeat=len(domain)):
        yield PointMap(domain, codomain, target)


def small_shapes(bounds: Bounds, prefix: str = "p"):
    """Every shape within bounds, smallest first."""
    for d in range(1, bounds.max_d + 1):
        for n in range(1, bounds.max_n + 1):
            for size in range(1, bounds.max_points + 1):
                yield Shape.of(labels(size, prefix), n, d)


_SEED_LIMIT = 16


@lru_cache(maxsize=64)
def all_lowen_topologies(shape: Shape) -> tuple[MultiFuzzyTopology, ...]:
    """Every topology generated by some subset of restricted-class grid sets."""
    return tuple(t for t, _ in _closures(shape, lowen=True))


@lru_cache(maxsize=64)
def all_bare_families(shape: Shape) -> tuple[tuple[MultiFuzzySet, ...], ...]:
    """Meet/join-closed families with the null set but no required constants."""
    return tuple(fam for fam, _ in _closures(shape, lowen=False))


def _closures(shape: Shape, lowen: bool):
    pool = restricted_sets(shape)
    if len(pool) > _SEED_LIMIT:
        raise ValueError(f"{len(pool)} restricted sets is too many to enumerate seed subsets")
    seen = {}
    for size in range(len(pool) + 1):
        for seeds in combinations(pool, size):
            result = generate(shape, seeds, Kind.LOWEN) if lowen else generate_plain(shape, seeds)
            key = result.codes if lowen else frozenset(s.code for s in result)
            if key not in seen:
                seen[key] = result
                yield result, seeds
