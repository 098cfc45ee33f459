import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FIXTURE_SHAPE, dims, exhaustive_corpus, random_corpus, shapes, tables
from mftop import (
    MultiFuzzyTopology,
    NbdSystem,
    Shape,
    constant,
    generate,
    is_nbd,
    nbd_family,
    nbd_from_topology,
    open_via_nbd,
    topology_from_nbd,
    verify_nbd_axioms,
)
from mftop import _grid
from mftop.instances import all_sets, restricted_sets
from mftop.neighborhood import InvalidNbdSystem, n4_attained, n4_threshold_premise
from mftop.topology import generate_plain
from oracles import o_nbd_family, o_nbd_violations, o_topology_from_nbd

# Frozen from o_nbd_family on the fixture space.
FIXTURE_FAMILIES = {
    "a": {((1,), (1,)), ((1,), (2,)), ((2,), (1,)), ((2,), (2,))},
    "b": {((1,), (1,)), ((2,), (1,)), ((2,), (2,))},
}

SMALL = exhaustive_corpus() + random_corpus(60, seed=7, bounds=__import__("mftop").instances.Bounds(3, 2, 2))


def test_fixture_families(fx):
    for x, expected in FIXTURE_FAMILIES.items():
        assert tables(nbd_family(fx, x)) == expected
        assert o_nbd_family(tables(fx), fx.universe.index(x), 2, 1, 2) == expected


def test_fixture_membership_queries(fx):
    s = FIXTURE_SHAPE
    assert is_nbd(s.make(a="1/2", b="1"), "a", fx)
    assert not is_nbd(s.make(a="1/2", b="1"), "b", fx)
    assert not is_nbd(s.make(b="1"), "a", fx)


@pytest.mark.parametrize("t", SMALL, ids=lambda t: f"{dims(t.shape)}-{len(t)}")
def test_families_match_oracle(t):
    p, n, d = dims(t.shape)
    opens = tables(t)
    families = []
    for xi, x in enumerate(t.universe):
        fam = tables(nbd_family(t, x))
        assert fam == o_nbd_family(opens, xi, p, n, d)
        families.append(fam)
    assert frozenset(tables(topology_from_nbd(nbd_from_topology(t)))) == o_topology_from_nbd(families, p, n, d)


@pytest.mark.parametrize("t", SMALL, ids=lambda t: f"{dims(t.shape)}-{len(t)}")
def test_round_trip(t):
    system = nbd_from_topology(t)
    assert verify_nbd_axioms(system).ok
    back = topology_from_nbd(system)
    assert back == t
    assert nbd_from_topology(back) == system


def test_is_nbd_agrees_with_family(fx):
    for x in fx.universe:
        fam = set(nbd_family(fx, x))
        for f in all_sets(fx.shape):
            assert is_nbd(f, x, fx) == (f in fam)


@pytest.mark.parametrize("t", SMALL[:40], ids=lambda t: f"{dims(t.shape)}-{len(t)}")
def test_open_via_nbd(t):
    for a in restricted_sets(t.shape):
        assert open_via_nbd(a, t) == (a in t)


def test_open_via_nbd_rejects_mixed():
    s = Shape.of(["a"], 2, 2)
    with pytest.raises(ValueError):
        open_via_nbd(s.make(a=["1", "0"]), generate(s, []))


def _mutants(t, rng, count):
    shape = t.shape
    pool = all_sets(shape)
    system = nbd_from_topology(t)
    for _ in range(count):
        x = rng.choice(shape.universe.points)
        fam = set(system.family(x))
        for _ in range(rng.randint(1, 3)):
            if fam and rng.random() < 0.6:
                fam.discard(rng.choice(sorted(fam, key=lambda s: s.table)))
            else:
                fam.add(rng.choice(pool))
        yield system.replace(x, fam)


@pytest.mark.parametrize("t", SMALL[:30], ids=lambda t: f"{dims(t.shape)}-{len(t)}")
def test_axiom_report_matches_oracle_on_mutants(t):
    rng = random.Random(len(t) * 31 + len(t.universe))
    p, n, d = dims(t.shape)
    for system in _mutants(t, rng, 12):
        families = [tables(system.family(x)) for x in t.universe]
        assert verify_nbd_axioms(system).axioms() == o_nbd_violations(families, p, n, d)


def test_each_axiom_can_fail(fx):
    s = FIXTURE_SHAPE
    system = nbd_from_topology(fx)
    half = constant(s, ["1/2"])
    fam_a = set(system.family("a"))
    assert "N1" in verify_nbd_axioms(system.replace("a", fam_a - {half})).axioms()
    assert "N2" in verify_nbd_axioms(system.replace("a", fam_a | {s.make(b="1")})).axioms()
    assert "N4" in verify_nbd_axioms(system.replace("a", fam_a - {s.make(a="1/2", b="1")})).axioms()
    bare = MultiFuzzyTopology(s, generate_plain(s, [s.make(a="1", b="1/2")]))
    report = verify_nbd_axioms(nbd_from_topology(bare))
    assert "N1" in report.axioms()
    assert verify_nbd_axioms(nbd_from_topology(bare), disabled=["N1"]).ok


def test_n3_failure():
    s = Shape.of(["a", "b"], 2, 2)
    system = nbd_from_topology(generate(s, []))
    odd = s.make(a=["1/2", "1/2"], b=["1", "0"])
    report = verify_nbd_axioms(system.replace("a", set(system.family("a")) | {odd}))
    assert "N3" in report.axioms()


def test_invalid_system_refused(fx):
    system = nbd_from_topology(fx)
    broken = system.replace("a", [])
    with pytest.raises(InvalidNbdSystem):
        topology_from_nbd(broken)
    with pytest.raises(ValueError):
        verify_nbd_axioms(system, disabled=["N9"])


def test_system_equality(fx):
    a = nbd_from_topology(fx)
    b = NbdSystem(fx.shape, {x: nbd_family(fx, x) for x in fx.universe})
    assert a == b and hash(a) == hash(b)
    assert a != a.replace("a", nbd_family(fx, "b"))


@settings(max_examples=80, deadline=None)
@given(shapes(max_points=2, max_n=2, max_d=3), st.data())
def test_n4_forms_agree(shape, data):
    """Attainment and half-step threshold forms select the same sets."""
    grid = _grid.grid(shape)
    picks = data.draw(st.lists(st.integers(0, len(grid) - 1), max_size=6))
    members = grid[sorted(set(picks))] if picks else grid[:0]
    xi = data.draw(st.integers(0, len(shape.universe) - 1))
    positive = _grid.positive_at(grid, shape.n, xi)
    attained = n4_attained(members, shape, xi) & positive
    threshold = n4_threshold_premise(members, grid, shape.n, xi) & positive
    assert np.array_equal(attained, threshold)
