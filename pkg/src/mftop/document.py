"""JSON space documents.

A document looks like::

    {
      "D": 2,
      "kind": "lowen",
      "maps": {"swap": {"a": "b", "b": "a"}},
      "n": 1,
      "opens": [{"a": ["0/2"], "b": ["0/2"]}, ...],
      "universe": ["a", "b"]
    }

Grades are exact ``"k/D"`` strings. A point may also carry its tuple
wrapped once more (``[["1/2", "1/2"]]``); it is read the same way. Serialization sorts keys, lists points
in universe order and opens in canonical order, so ``serialize(parse(t))``
is a fixpoint.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from .core import GradeChain, GradeError, MultiFuzzySet, PointMap, Shape, Universe
from .topology import AxiomViolation, Kind, MultiFuzzyTopology, verify_axioms

TOP_LEVEL = {"universe", "n", "D", "kind", "opens", "maps"}


class DocumentError(ValueError):
    def __init__(self, message: str, path: str = "", line: int | None = None):
        self.path, self.line = path, line
        where = f"line {line}: " if line is not None else ""
        where += f"{path}: " if path else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class SpaceDocument:
    topology: MultiFuzzyTopology
    maps: Mapping[str, Mapping[str, str]] = field(default_factory=dict)

    def point_map(self, name: str, codomain: Universe | None = None) -> PointMap:
        if name not in self.maps:
            raise DocumentError(f"no map named {name!r}", "maps")
        target = codomain or self.topology.universe
        try:
            return PointMap.from_mapping(self.topology.universe, target, self.maps[name])
        except (KeyError, ValueError) as exc:
            raise DocumentError(f"map {name!r} is not a total map into the codomain: {exc}", f"maps.{name}") from exc


def set_to_json(s: MultiFuzzySet) -> dict[str, list[str]]:
    fmt = s.chain.format
    return {x: [fmt(k) for k in row] for x, row in s.items()}


def to_dict(topology: MultiFuzzyTopology, maps: Mapping[str, Mapping[str, str]] | None = None) -> dict[str, Any]:
    doc = {
        "universe": list(topology.universe.points),
        "n": topology.n,
        "D": topology.chain.denominator,
        "kind": topology.kind.value,
        "opens": [set_to_json(g) for g in topology.opens],
    }
    if maps:
        doc["maps"] = {name: {x: m[x] for x in sorted(m)} for name, m in sorted(maps.items())}
    return doc


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def serialize_space(doc: SpaceDocument | MultiFuzzyTopology) -> str:
    if isinstance(doc, MultiFuzzyTopology):
        doc = SpaceDocument(doc)
    return dumps(to_dict(doc.topology, doc.maps))


def _expect(value, kind, path):
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        name = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise DocumentError(f"expected {name}, got {type(value).__name__}", path)
    return value


def _parse_set(raw, shape: Shape, path: str) -> MultiFuzzySet:
    _expect(raw, dict, path)
    unknown = sorted(set(raw) - set(shape.universe))
    if unknown:
        raise DocumentError(f"unknown point {unknown[0]!r}", path)
    rows = []
    for x in shape.universe:
        if x not in raw:
            raise DocumentError(f"missing point {x!r}", path)
        tup = _expect(raw[x], list, f"{path}.{x}")
        if len(tup) == 1 and isinstance(tup[0], list):
            tup = tup[0]  # nested single-tuple form [["k/D", ...]]
        if len(tup) != shape.n:
            raise DocumentError(f"expected {shape.n} grades, got {len(tup)}", f"{path}.{x}")
        row = []
        for i, g in enumerate(tup):
            _expect(g, str, f"{path}.{x}[{i}]")
            try:
                row.append(shape.chain.parse(g))
            except GradeError as exc:
                raise DocumentError(str(exc), f"{path}.{x}[{i}]") from None
        rows.append(tuple(row))
    return MultiFuzzySet(shape, tuple(rows))


def from_dict(data: Any) -> SpaceDocument:
    _expect(data, dict, "$")
    extra = sorted(set(data) - TOP_LEVEL)
    if extra:
        raise DocumentError(f"unknown field {extra[0]!r}", "$")
    for key in ("universe", "n", "D", "opens"):
        if key not in data:
            raise DocumentError(f"missing field {key!r}", "$")
    points = _expect(data["universe"], list, "universe")
    for i, p in enumerate(points):
        _expect(p, str, f"universe[{i}]")
    try:
        universe = Universe(tuple(points))
    except ValueError as exc:
        raise DocumentError(str(exc), "universe") from None
    n = _expect(data["n"], int, "n")
    denominator = _expect(data["D"], int, "D")
    try:
        shape = Shape(universe, n, GradeChain(denominator))
    except ValueError as exc:
        raise DocumentError(str(exc), "n" if "dimension" in str(exc) else "D") from None
    kind_raw = data.get("kind", "lowen")
    try:
        kind = Kind(_expect(kind_raw, str, "kind"))
    except ValueError:
        raise DocumentError(f"kind must be 'lowen' or 'chang', got {kind_raw!r}", "kind") from None
    opens = [_parse_set(raw, shape, f"opens[{i}]") for i, raw in enumerate(_expect(data["opens"], list, "opens"))]
    maps: dict[str, dict[str, str]] = {}
    for name, m in _expect(data.get("maps", {}), dict, "maps").items():
        _expect(m, dict, f"maps.{name}")
        for x, y in m.items():
            if x not in universe:
                raise DocumentError(f"unknown point {x!r}", f"maps.{name}")
            _expect(y, str, f"maps.{name}.{x}")
        missing = [x for x in universe if x not in m]
        if missing:
            raise DocumentError(f"map undefined at {missing[0]!r}", f"maps.{name}")
        maps[name] = dict(m)
    return SpaceDocument(MultiFuzzyTopology(shape, tuple(opens), kind), maps)


def parse_space(text: str, verify: bool = True) -> SpaceDocument:
    """Parse and validate a document; axiom failures raise :class:`AxiomViolation`."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc.msg} (column {exc.colno})", line=exc.lineno) from None
    doc = from_dict(data)
    if verify:
        report = verify_axioms(doc.topology.opens, doc.topology.kind, doc.topology.shape)
        if not report.ok:
            raise AxiomViolation(report)
    return doc


def load_space(path: str | Path, verify: bool = True) -> SpaceDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
    return parse_space(text, verify)
