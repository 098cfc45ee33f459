import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FIXTURE_SHAPE, dims, exhaustive_corpus, sets_over, shapes, tables, topologies
from mftop import (
    AxiomViolation,
    Kind,
    MultiFuzzyTopology,
    Shape,
    absolute,
    checked,
    constant,
    generate,
    is_open_base,
    minimal_base,
    null,
    verify_axioms,
)
from mftop.instances import all_lowen_topologies
from mftop.topology import NotASubfamily, generate_plain, intersect_topologies, is_closed
from oracles import o_all_lowen, o_closure, o_is_lowen, o_minimum_base

# Frozen from o_all_lowen: number of distinct Lowen topologies per shape.
LOWEN_COUNTS = {(1, 1, 1): 1, (2, 1, 1): 4, (1, 1, 2): 1, (2, 1, 2): 25, (1, 2, 2): 1, (3, 1, 1): 29}


def test_fixture_generation(fx):
    assert tables(fx) == {((0,), (0,)), ((1,), (1,)), ((2,), (1,)), ((2,), (2,))}
    assert verify_axioms(fx.opens).ok


def test_empty_seeds_give_minimal_space():
    t = generate(FIXTURE_SHAPE, [])
    assert tables(t) == {((0,), (0,)), ((1,), (1,)), ((2,), (2,))}


def test_verify_reports_each_rule(fx):
    s = FIXTURE_SHAPE
    rules = lambda fam, kind=Kind.LOWEN: verify_axioms(fam, kind, s).rules()
    assert rules([g for g in fx.opens if g != null(s)]) == {"missing-null"}
    assert rules([g for g in fx.opens if g != constant(s, ["1/2"])]) == {"missing-constant"}
    s2 = Shape.of(["a", "b"], 2, 2)
    base2 = generate(s2, []).opens
    mixed = s2.make(a=["1", "0"])
    assert "restricted-class" in verify_axioms(list(base2) + [mixed], Kind.LOWEN, s2).rules()
    assert "restricted-class" not in verify_axioms(list(base2) + [mixed], Kind.CHANG, s2).rules()
    v = s.make(b="1")
    assert rules(list(fx.opens) + [v]) == {"meet-closure", "join-closure"}
    assert rules([null(s), absolute(s)], Kind.CHANG) == set()
    assert rules([null(s)], Kind.CHANG) == {"missing-absolute"}


def test_checked_raises(fx):
    with pytest.raises(AxiomViolation) as info:
        checked(FIXTURE_SHAPE, fx.opens[1:])
    assert "missing-null" in info.value.report.rules()


def test_lowen_seed_outside_restricted_class_rejected():
    s = Shape.of(["a", "b"], 2, 2)
    with pytest.raises(ValueError):
        generate(s, [s.make(a=["1", "0"])])


@pytest.mark.parametrize("key", sorted(LOWEN_COUNTS))
def test_enumeration_counts(key):
    points, n, d = key
    shape = Shape.of([f"p{i}" for i in range(points)], n, d)
    found = all_lowen_topologies(shape)
    assert len(found) == LOWEN_COUNTS[key]
    assert {frozenset(tables(t)) for t in found} == o_all_lowen(points, n, d)


@settings(max_examples=60, deadline=None)
@given(shapes(max_points=2, max_n=2, max_d=2), st.data())
def test_generate_matches_naive_closure(shape, data):
    seeds = data.draw(st.lists(sets_over(shape, restricted=True), max_size=3))
    t = generate(shape, seeds)
    p, n, d = dims(shape)
    assert frozenset(tables(t)) == o_closure([s.table for s in seeds], p, n, d)
    assert o_is_lowen(tables(t), p, n, d)


@settings(max_examples=60, deadline=None)
@given(shapes(max_points=2, max_n=2, max_d=2), st.data())
def test_generate_plain_matches_bare_closure(shape, data):
    seeds = data.draw(st.lists(sets_over(shape), max_size=3))
    p, n, d = dims(shape)
    assert frozenset(tables(generate_plain(shape, seeds))) == o_closure([s.table for s in seeds], p, n, d, lowen=False)


@settings(max_examples=40, deadline=None)
@given(topologies())
def test_generated_spaces_verify(t):
    assert verify_axioms(t.opens, Kind.LOWEN, t.shape).ok


def test_minimal_base_fixture(fx):
    assert tables(minimal_base(fx)) == {((1,), (1,)), ((2,), (1,)), ((2,), (2,))}


@pytest.mark.parametrize("t", exhaustive_corpus(), ids=lambda t: f"{len(t.universe)}-{t.chain.denominator}-{len(t)}")
def test_minimal_base_is_the_smallest(t):
    base = minimal_base(t)
    p, n, _ = dims(t.shape)
    assert is_open_base(base, t)
    assert tables(base) == o_minimum_base(tables(t), p, n)
    for b in base:
        assert not is_open_base([c for c in base if c != b], t)


def test_open_base_requires_opens(fx):
    with pytest.raises(NotASubfamily):
        is_open_base([FIXTURE_SHAPE.make(a="1/2", b="1")], fx)
    assert is_open_base(fx.opens, fx)
    assert not is_open_base([constant(FIXTURE_SHAPE, ["1"])], fx)


def test_intersection_and_closed_sets(fx):
    minimal = generate(FIXTURE_SHAPE, [])
    assert intersect_topologies([fx, minimal]) == minimal
    assert tables(fx.closed_sets()) == {((2,), (2,)), ((1,), (1,)), ((0,), (1,)), ((0,), (0,))}
    assert is_closed(FIXTURE_SHAPE.make(b="1/2"), fx)


def test_topology_is_canonical():
    s = FIXTURE_SHAPE
    a = MultiFuzzyTopology(s, (absolute(s), null(s)))
    b = MultiFuzzyTopology(s, (null(s), absolute(s), null(s)))
    assert a == b and hash(a) == hash(b) and len(a) == 2
