import json

import pytest

from mftop import PROPERTIES, mine_counterexamples
from mftop.instances import Bounds

QUICK = [
    "homeomorphism-criteria",
    "nbd-meet",
    "open-via-nbd",
    "nbd-axioms",
    "nbd-to-topology",
    "nbd-roundtrip",
    "continuity-criteria",
    "basic-maps",
    "product-base",
    "projections",
    "slice-embeddings",
    "second-countable-product",
]


def test_registry_names():
    assert len(PROPERTIES) == 18
    assert all(p.summary and callable(p.check) for p in PROPERTIES.values())


@pytest.mark.parametrize("name", QUICK)
def test_exhaustive_runs_are_clean_and_complete(name):
    r = mine_counterexamples(name)
    assert r.mode == "exhaustive" and r.complete and r.examined > 0
    assert r.counterexamples == 0 and r.witness is None


@pytest.mark.parametrize("name", sorted(PROPERTIES))
def test_random_runs_are_clean(name):
    r = mine_counterexamples(name, Bounds(3, 2, 2), samples=15, seed=3)
    assert r.mode == "random" and r.examined == 15 and r.ok


def test_mutation_is_detected():
    r = mine_counterexamples("nbd-roundtrip", disabled=["N1"])
    assert r.counterexamples > 0
    witness = r.witness
    assert witness["failures"] and witness["instance"]["spaces"]
    json.dumps(r.as_dict())


def test_minimal_witness_is_smallest():
    r = mine_counterexamples("nbd-roundtrip", disabled=["N1"])
    space = r.witness["instance"]["spaces"][0]
    assert len(space["universe"]) == 1 and space["D"] == 1


def test_budget_marks_incomplete():
    r = mine_counterexamples("product-map-continuous", budget_ms=50)
    assert not r.complete and r.examined < 1_000_000


def test_seeded_runs_repeat():
    a = mine_counterexamples("continuity-criteria", Bounds(3, 2, 3), samples=30, seed=1).as_dict()
    b = mine_counterexamples("continuity-criteria", Bounds(3, 2, 3), samples=30, seed=1).as_dict()
    assert a == b


def test_unknown_property():
    with pytest.raises(KeyError):
        mine_counterexamples("no-such-thing")
