import json

import pytest
from hypothesis import given, settings

from conftest import topologies
from mftop import AxiomViolation, DocumentError, parse_space, serialize_space
from mftop.document import SpaceDocument, load_space

FIXTURE = {
    "universe": ["a", "b"],
    "n": 1,
    "D": 2,
    "kind": "lowen",
    "opens": [
        {"a": ["0/2"], "b": ["0/2"]},
        {"a": ["1/2"], "b": ["1/2"]},
        {"a": ["2/2"], "b": ["1/2"]},
        {"a": ["2/2"], "b": ["2/2"]},
    ],
    "maps": {"swap": {"a": "b", "b": "a"}},
}


def _text(**changes):
    doc = json.loads(json.dumps(FIXTURE))
    doc.update(changes)
    return json.dumps(doc)


def test_fixture_parses_and_round_trips():
    doc = parse_space(_text())
    assert len(doc.topology) == 4
    text = serialize_space(doc)
    assert json.loads(text) == FIXTURE
    assert serialize_space(parse_space(text)) == text


def test_canonicalization_is_idempotent():
    shuffled = dict(FIXTURE, opens=list(reversed(FIXTURE["opens"])), universe=["b", "a"])
    once = serialize_space(parse_space(json.dumps(shuffled)))
    assert once == serialize_space(parse_space(once))
    assert json.loads(once)["universe"] == ["a", "b"]


@settings(max_examples=60, deadline=None)
@given(topologies())
def test_serialize_parse_identity(t):
    text = serialize_space(t)
    assert parse_space(text).topology == t
    assert serialize_space(parse_space(text)) == text


def test_grade_off_chain():
    opens = json.loads(json.dumps(FIXTURE["opens"]))
    opens[1]["a"] = ["1/3"]
    with pytest.raises(DocumentError, match="not on chain") as info:
        parse_space(_text(opens=opens))
    assert info.value.path == "opens[1].a[0]"


def test_missing_null_is_an_axiom_violation():
    with pytest.raises(AxiomViolation) as info:
        parse_space(_text(opens=FIXTURE["opens"][1:]))
    assert "missing-null" in info.value.report.rules()
    assert len(parse_space(_text(opens=FIXTURE["opens"][1:]), verify=False).topology) == 3


@pytest.mark.parametrize(
    "changes,path",
    [
        ({"n": "1"}, "n"),
        ({"D": 0}, "D"),
        ({"universe": ["a", "a"]}, "universe"),
        ({"kind": "weird"}, "kind"),
        ({"extra": 1}, "$"),
        ({"opens": [{"a": ["0/2"]}]}, "opens[0]"),
        ({"opens": [{"a": ["0/2"], "b": ["0/2"], "z": ["0/2"]}]}, "opens[0]"),
        ({"opens": [{"a": ["0/2", "0/2"], "b": ["0/2"]}]}, "opens[0].a"),
        ({"opens": [{"a": [0], "b": ["0/2"]}]}, "opens[0].a[0]"),
        ({"maps": {"f": {"a": "b"}}}, "maps.f"),
        ({"maps": {"f": {"a": "b", "b": "a", "q": "a"}}}, "maps.f"),
    ],
)
def test_field_paths(changes, path):
    with pytest.raises(DocumentError) as info:
        parse_space(_text(**changes))
    assert info.value.path == path


def test_missing_field_and_bad_json():
    doc = dict(FIXTURE)
    del doc["opens"]
    with pytest.raises(DocumentError, match="missing field 'opens'"):
        parse_space(json.dumps(doc))
    with pytest.raises(DocumentError) as info:
        parse_space('{\n  "universe": [\n}')
    assert info.value.line == 3


def test_nested_tuple_form_accepted():
    opens = [{x: [g] for x, g in o.items()} for o in FIXTURE["opens"]]
    assert parse_space(_text(opens=opens)).topology == parse_space(_text()).topology


def test_maps_and_files(tmp_path):
    path = tmp_path / "space.json"
    path.write_text(_text())
    doc = load_space(path)
    assert isinstance(doc, SpaceDocument)
    assert doc.point_map("swap").as_dict() == {"a": "b", "b": "a"}
    with pytest.raises(DocumentError):
        doc.point_map("missing")
    with pytest.raises(DocumentError):
        load_space(tmp_path / "absent.json")


def test_map_into_other_codomain():
    doc = parse_space(_text(maps={"f": {"a": "x", "b": "x"}}))
    with pytest.raises(DocumentError):
        doc.point_map("f")
    other = parse_space(json.dumps({"universe": ["x"], "n": 1, "D": 2, "opens": [{"x": ["0/2"]}, {"x": ["1/2"]}, {"x": ["2/2"]}]}))
    assert doc.point_map("f", other.topology.universe).as_dict() == {"a": "x", "b": "x"}
