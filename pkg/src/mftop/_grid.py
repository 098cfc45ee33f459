"""Array encoding of multi-fuzzy sets for bulk checks.

A set over a shape is flattened to a row of ``width = |X| * n`` numerators
(point-major). Its code is the base-(D+1) integer of that row, least
significant digit first, matching :attr:`MultiFuzzySet.code`.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

import numpy as np

from .core import MultiFuzzySet, Shape

GRID_LIMIT = 1 << 22
DTYPE = np.int16
_CHUNK_CELLS = 1 << 23


class GridTooLarge(ValueError):
    """The full grid of sets is too big to enumerate."""


def grid_size(shape: Shape) -> int:
    return (shape.D + 1) ** shape.width


def weights(shape: Shape) -> np.ndarray:
    if grid_size(shape) >= 1 << 62:
        raise GridTooLarge(f"codes for {shape} overflow 64 bits")
    return (shape.D + 1) ** np.arange(shape.width, dtype=np.int64)


def encode(arr: np.ndarray, shape: Shape) -> np.ndarray:
    return arr.astype(np.int64) @ weights(shape)


def decode(codes: np.ndarray, shape: Shape) -> np.ndarray:
    return _digits(np.asarray(codes, dtype=np.int64), shape.width, shape.D + 1)


def _digits(codes: np.ndarray, width: int, base: int) -> np.ndarray:
    out = np.empty((codes.shape[0], width), dtype=DTYPE)
    rest = codes.copy()
    for j in range(width):
        out[:, j] = rest % base
        rest //= base
    return out


@lru_cache(maxsize=32)
def _grid(width: int, base: int) -> np.ndarray:
    arr = _digits(np.arange(base**width, dtype=np.int64), width, base)
    arr.flags.writeable = False
    return arr


def grid(shape: Shape) -> np.ndarray:
    """Every set over ``shape`` as an (N, width) array, in code order."""
    size = grid_size(shape)
    if size > GRID_LIMIT:
        raise GridTooLarge(f"{size} sets over {shape}; limit is {GRID_LIMIT}")
    return _grid(shape.width, shape.D + 1)


def as_array(family: Iterable[MultiFuzzySet], shape: Shape) -> np.ndarray:
    rows = [s.vector for s in family]
    if not rows:
        return np.zeros((0, shape.width), dtype=DTYPE)
    return np.array(rows, dtype=DTYPE)


def as_sets(arr: np.ndarray, shape: Shape) -> tuple[MultiFuzzySet, ...]:
    """Rows to sets, deduplicated and in canonical (table) order."""
    n = shape.n
    out = {
        tuple(tuple(row[i : i + n]) for i in range(0, len(row), n))
        for row in np.asarray(arr).tolist()
    }
    return tuple(MultiFuzzySet(shape, t) for t in sorted(out))


def unique_rows(arr: np.ndarray, shape: Shape) -> np.ndarray:
    if len(arr) == 0:
        return arr
    _, idx = np.unique(encode(arr, shape), return_index=True)
    return arr[np.sort(idx)]


def block(arr: np.ndarray, n: int, xi: int) -> np.ndarray:
    """The grade tuples at point index ``xi``."""
    return arr[:, xi * n : (xi + 1) * n]


def positive_at(arr: np.ndarray, n: int, xi: int) -> np.ndarray:
    return (block(arr, n, xi) > 0).all(axis=1)


def restricted_mask(arr: np.ndarray, shape: Shape) -> np.ndarray:
    n = shape.n
    blocks = arr.reshape(len(arr), len(shape.universe), n)
    pos = (blocks > 0).all(axis=2)
    zero = (blocks == 0).all(axis=2)
    return (pos | zero).all(axis=1)


def chunks(rows: int, other: int, width: int):
    """Row slices sized so a (chunk, other, width) broadcast stays bounded."""
    step = max(1, _CHUNK_CELLS // max(1, other * width))
    for start in range(0, rows, step):
        yield slice(start, min(rows, start + step))


def close(arr: np.ndarray, shape: Shape, meets: bool = True, joins: bool = True) -> np.ndarray:
    """Closure of ``arr`` under pairwise meet and/or join (semi-naive fixpoint)."""
    arr = unique_rows(arr, shape)
    known = set(encode(arr, shape).tolist())
    members = [arr]
    frontier = arr
    w = shape.width
    while len(frontier):
        every = np.concatenate(members)
        fresh = []
        for sl in chunks(len(frontier), len(every), w):
            left = frontier[sl, None, :]
            ops = []
            if meets:
                ops.append(np.minimum(left, every[None, :, :]).reshape(-1, w))
            if joins:
                ops.append(np.maximum(left, every[None, :, :]).reshape(-1, w))
            for cand in ops:
                codes, idx = np.unique(encode(cand, shape), return_index=True)
                keep = [i for c, i in zip(codes.tolist(), idx.tolist()) if c not in known]
                if keep:
                    rows = cand[keep]
                    known.update(encode(rows, shape).tolist())
                    fresh.append(rows)
        frontier = np.concatenate(fresh) if fresh else frontier[:0]
        if len(frontier):
            members.append(frontier)
    return np.concatenate(members)


def lookup(codes: np.ndarray, shape: Shape):
    """Membership test ``f(query_codes) -> bool array`` for a code family."""
    if grid_size(shape) <= GRID_LIMIT:
        table = np.zeros(grid_size(shape), dtype=bool)
        table[codes] = True
        return lambda q: table[q]
    ordered = np.sort(codes)
    return lambda q: np.isin(q, ordered)


def upset(mask: np.ndarray, shape: Shape) -> np.ndarray:
    """Upward closure of a grid indicator: True wherever some marked set lies below."""
    base = shape.D + 1
    cube = mask.reshape((base,) * shape.width)
    for axis in range(shape.width):
        cube = np.logical_or.accumulate(cube, axis=axis)
    return cube.reshape(-1)


def indicator(codes: np.ndarray, shape: Shape) -> np.ndarray:
    out = np.zeros(grid_size(shape), dtype=bool)
    out[codes] = True
    return out
