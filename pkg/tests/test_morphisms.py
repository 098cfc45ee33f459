import random

import pytest

from conftest import FIXTURE_SHAPE, dims, exhaustive_corpus, random_corpus, tables
from mftop import (
    Criterion,
    PointMap,
    SpaceMap,
    compose,
    continuity_table,
    generate,
    is_continuous,
    is_continuous_via,
    is_homeomorphism,
    is_open_map,
)
from mftop.instances import Bounds, all_maps, random_map
from mftop.morphisms import CriteriaDisagree, homeomorphism_routes, is_closed_map
from oracles import o_closed_preimage, o_continuous, o_nbd_pullback, o_nbd_witness, o_open_map


def _pairs():
    corpus = exhaustive_corpus()
    rng = random.Random(11)
    extra = random_corpus(80, seed=5, bounds=Bounds(3, 2, 2))
    out = []
    for a in corpus:
        for b in corpus:
            if (a.n, a.chain) == (b.n, b.chain):
                out.append((a, b))
    for _ in range(60):
        a, b = rng.choice(extra), rng.choice(extra)
        if (a.n, a.chain) == (b.n, b.chain):
            out.append((a, b))
    return out


PAIRS = _pairs()


def test_fixture_swap_fails_everything(fx):
    swap = SpaceMap.from_mapping(fx, fx, {"a": "b", "b": "a"})
    assert set(continuity_table(swap).values()) == {False}
    assert not is_open_map(swap)
    assert not is_homeomorphism(swap)


def test_fixture_identity_and_collapse(fx):
    ident = SpaceMap.identity(fx)
    assert all(continuity_table(ident).values()) and is_homeomorphism(ident)
    collapse = SpaceMap.from_mapping(fx, fx, {"a": "a", "b": "a"})
    assert is_continuous(collapse)
    for y in fx.universe:
        assert is_continuous(SpaceMap.const(fx, fx, y))


@pytest.mark.parametrize("case", range(len(PAIRS)))
def test_criteria_match_oracles(case):
    a, b = PAIRS[case]
    da, db = dims(a.shape), dims(b.shape)
    ta, tb = tables(a), tables(b)
    maps = list(all_maps(a.universe, b.universe))
    if len(maps) > 8:
        maps = random.Random(case).sample(maps, 8)
    for f in maps:
        m = SpaceMap(f, a, b)
        assign = f.index_map
        expected = o_continuous(assign, ta, tb)
        table = continuity_table(m)
        assert table[Criterion.OPEN_PREIMAGE] == expected
        assert table[Criterion.CLOSED_PREIMAGE] == o_closed_preimage(assign, ta, tb, a.chain.denominator) == expected
        assert table[Criterion.NBD_PULLBACK] == o_nbd_pullback(assign, ta, tb, da, db) == expected
        assert table[Criterion.NBD_WITNESS] == o_nbd_witness(assign, ta, tb, da, db) == expected
        assert is_open_map(m) == o_open_map(assign, ta, tb, len(b.universe), a.n)
        assert is_continuous_via(m, "nbd-witness") == expected


def test_homeomorphism_routes_agree():
    for a, b in PAIRS:
        if len(a.universe) != len(b.universe):
            continue
        for f in all_maps(a.universe, b.universe):
            m = SpaceMap(f, a, b)
            inv, op = homeomorphism_routes(m)
            assert inv == op
            if not f.is_bijective():
                assert (inv, op) == (False, False)


def test_routes_would_be_caught(monkeypatch, fx):
    import mftop.morphisms as mm

    monkeypatch.setattr(mm, "homeomorphism_routes", lambda m: (True, False))
    with pytest.raises(CriteriaDisagree):
        mm.is_homeomorphism(SpaceMap.identity(fx))


def test_composition_preserves_continuity_and_openness():
    rng = random.Random(3)
    spaces = [t for t in exhaustive_corpus() if t.chain.denominator == 2]
    for _ in range(300):
        a, b, c = (rng.choice(spaces) for _ in range(3))
        f = SpaceMap(random_map(rng, a.universe, b.universe), a, b)
        g = SpaceMap(random_map(rng, b.universe, c.universe), b, c)
        gf = compose(f, g)
        assert gf.f.as_dict() == {x: g(f(x)) for x in a.universe}
        if is_continuous(f) and is_continuous(g):
            assert is_continuous(gf)
        if is_open_map(f) and is_open_map(g):
            assert is_open_map(gf)


def test_closed_map(fx):
    assert is_closed_map(SpaceMap.identity(fx))
    swap = SpaceMap.from_mapping(fx, fx, {"a": "b", "b": "a"})
    assert not is_closed_map(swap)


def test_shape_checks(fx):
    other = generate(FIXTURE_SHAPE.__class__.of(["a", "b"], 1, 3), [])
    with pytest.raises(ValueError):
        SpaceMap(PointMap.identity(fx.universe), fx, other)
    with pytest.raises(ValueError):
        compose(SpaceMap.identity(fx), SpaceMap.identity(other))
