"""Maps between multi-fuzzy topological spaces."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import _grid
from .core import PointMap, ShapeMismatch, image, preimage
from .neighborhood import _nbd_codes
from .topology import MultiFuzzyTopology


class Criterion(str, enum.Enum):
    OPEN_PREIMAGE = "open-preimage"
    CLOSED_PREIMAGE = "closed-preimage"
    NBD_PULLBACK = "nbd-pullback"
    NBD_WITNESS = "nbd-witness"


class CriteriaDisagree(AssertionError):
    """Characterizations that must coincide gave different answers."""


@dataclass(frozen=True)
class SpaceMap:
    f: PointMap
    domain: MultiFuzzyTopology
    codomain: MultiFuzzyTopology

    def __post_init__(self):
        if self.f.domain != self.domain.universe or self.f.codomain != self.codomain.universe:
            raise ShapeMismatch("point map universes do not match the spaces")
        if self.domain.n != self.codomain.n or self.domain.chain != self.codomain.chain:
            raise ShapeMismatch("spaces differ in dimension or chain")

    @classmethod
    def identity(cls, space: MultiFuzzyTopology) -> "SpaceMap":
        return cls(PointMap.identity(space.universe), space, space)

    @classmethod
    def const(cls, domain: MultiFuzzyTopology, codomain: MultiFuzzyTopology, y: str) -> "SpaceMap":
        return cls(PointMap.const(domain.universe, codomain.universe, y), domain, codomain)

    @classmethod
    def from_mapping(cls, domain, codomain, mapping) -> "SpaceMap":
        return cls(PointMap.from_mapping(domain.universe, codomain.universe, mapping), domain, codomain)

    def __call__(self, x: str) -> str:
        return self.f(x)

    def image(self, a):
        return image(self.f, a)

    def preimage(self, b):
        return preimage(self.f, b)

    def inverse(self) -> "SpaceMap":
        return SpaceMap(self.f.inverse(), self.codomain, self.domain)

    # array versions -------------------------------------------------------

    @property
    def _pull_columns(self) -> np.ndarray:
        n = self.domain.n
        return np.array([j * n + i for j in self.f.index_map for i in range(n)], dtype=np.intp)

    def pull(self, arr: np.ndarray) -> np.ndarray:
        """Preimages of codomain rows."""
        return arr[:, self._pull_columns]

    def push(self, arr: np.ndarray) -> np.ndarray:
        """Images of domain rows (fiberwise maximum, zero on empty fibers)."""
        n = self.domain.n
        out = np.zeros((len(arr), self.codomain.shape.width), dtype=arr.dtype)
        for xi, j in enumerate(self.f.index_map):
            out[:, j * n : (j + 1) * n] = np.maximum(out[:, j * n : (j + 1) * n], arr[:, xi * n : (xi + 1) * n])
        return out


def _all_in(arr: np.ndarray, space: MultiFuzzyTopology) -> bool:
    if len(arr) == 0:
        return True
    codes = _grid.encode(arr, space.shape)
    return all(c in space.codes for c in codes.tolist())


def is_continuous(m: SpaceMap) -> bool:
    """Preimage of every codomain open is open."""
    return _all_in(m.pull(np.asarray(m.codomain.array)), m.domain)


def _closed_preimage(m: SpaceMap) -> bool:
    top = m.codomain.shape.D
    closed = top - np.asarray(m.codomain.array)
    pulled = m.pull(closed)
    return _all_in(top - pulled, m.domain)


def _nbd_pullback(m: SpaceMap) -> bool:
    dom, cod = m.domain, m.codomain
    for xi, yi in enumerate(m.f.index_map):
        nbds_y = _grid.decode(_nbd_codes(cod, yi), cod.shape)
        pulled = _grid.encode(m.pull(nbds_y), dom.shape)
        inside = _grid.lookup(_nbd_codes(dom, xi), dom.shape)
        if not inside(pulled).all():
            return False
    return True


def _nbd_witness(m: SpaceMap) -> bool:
    dom, cod = m.domain, m.codomain
    n = dom.n
    for xi, yi in enumerate(m.f.index_map):
        big_n = _grid.decode(_nbd_codes(cod, yi), cod.shape)
        if len(big_n) == 0:
            continue
        cands = _grid.decode(_nbd_codes(dom, xi), dom.shape)
        if len(cands) == 0:
            return False
        pushed = m.push(cands)
        m_at_x = _grid.block(cands, n, xi)
        n_at_fx = _grid.block(big_n, n, yi)
        w = cod.shape.width
        for sl in _grid.chunks(len(big_n), len(cands), w):
            under = (pushed[None, :, :] <= big_n[sl, None, :]).all(axis=2)
            agree = (m_at_x[None, :, :] == n_at_fx[sl, None, :]).all(axis=2)
            if not (under & agree).any(axis=1).all():
                return False
    return True


_CRITERIA = {
    Criterion.OPEN_PREIMAGE: is_continuous,
    Criterion.CLOSED_PREIMAGE: _closed_preimage,
    Criterion.NBD_PULLBACK: _nbd_pullback,
    Criterion.NBD_WITNESS: _nbd_witness,
}


def is_continuous_via(m: SpaceMap, criterion: Criterion | str) -> bool:
    return _CRITERIA[Criterion(criterion)](m)


def continuity_table(m: SpaceMap) -> dict[Criterion, bool]:
    return {c: fn(m) for c, fn in _CRITERIA.items()}


def is_open_map(m: SpaceMap) -> bool:
    return _all_in(m.push(np.asarray(m.domain.array)), m.codomain)


def is_closed_map(m: SpaceMap) -> bool:
    top = m.domain.shape.D
    pushed = m.push(top - np.asarray(m.domain.array))
    return _all_in(top - pushed, m.codomain)


def homeomorphism_routes(m: SpaceMap) -> tuple[bool, bool]:
    """(map and inverse continuous, map continuous and open); both False unless bijective."""
    if not m.f.is_bijective():
        return False, False
    cont = is_continuous(m)
    both_ways = cont and is_continuous(m.inverse())
    cont_open = cont and is_open_map(m)
    return both_ways, cont_open


def is_homeomorphism(m: SpaceMap) -> bool:
    both_ways, cont_open = homeomorphism_routes(m)
    if both_ways != cont_open:
        raise CriteriaDisagree(f"inverse-continuity says {both_ways}, openness says {cont_open}")
    return both_ways


def compose(first: SpaceMap, second: SpaceMap) -> SpaceMap:
    """``second`` after ``first``."""
    if first.codomain != second.domain:
        raise ShapeMismatch("codomain of the first map is not the domain of the second")
    return SpaceMap(first.f.then(second.f), first.domain, second.codomain)
