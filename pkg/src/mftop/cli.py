"""Command-line front end: ``mftop <command> ...``.

Every command prints one report (text or JSON) and exits with 0 when all
checks pass, 2 when a check fails or an input space violates its axioms,
64 on usage errors and 65 on unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from .core import ShapeMismatch, UnknownPoint
from .document import DocumentError, SpaceDocument, dumps, load_space, set_to_json, to_dict
from .instances import Bounds
from .mining import PROPERTIES, mine_counterexamples
from .morphisms import Criterion, SpaceMap, continuity_table, homeomorphism_routes, is_open_map
from .neighborhood import AXIOMS, nbd_family, nbd_from_topology, topology_from_nbd, verify_nbd_axioms
from .product import (
    check_compact,
    continuous_via_projections,
    is_second_countable,
    product_base,
    product_topology,
    projection,
    slice_embedding,
    smallest_topology_check,
)
from .topology import AxiomViolation, is_open_base, minimal_base, verify_axioms

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INPUT = 0, 2, 64, 65
BUDGET_ENV = "MFTOP_BUDGET_MS"
PRODUCT_CHECKS = ("basis", "projections", "smallest", "base", "slices", "compact", "second-countable")


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _globals(defaults: bool) -> argparse.ArgumentParser:
    # Shared options are accepted before and after the command name; the copy
    # attached to each subcommand must not overwrite values given earlier.
    g = _Parser(add_help=False)
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    g.add_argument("--seed", type=_seed, default=d(0), help="seed for sampled checks (default 0)")
    g.add_argument("--budget-ms", type=_nonnegative, default=d(None), help=f"time budget for mining; {BUDGET_ENV} overrides")
    g.add_argument("--format", choices=("json", "text"), default=d("text"))
    g.add_argument("--no-verify", action="store_true", default=d(False), help="skip axiom checks on input spaces")
    g.add_argument("--timing", action="store_true", default=d(False), help="include elapsed time (reports stop being reproducible)")
    return g


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mftop", description="Check finite multi-fuzzy topological spaces.", parents=[_globals(True)])
    common = _globals(False)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name, help_):
        return sub.add_parser(name, help=help_, description=help_, parents=[common])

    add("verify", "check the topology axioms of a space").add_argument("file")
    p = add("nbd", "neighbourhood families and their axioms")
    p.add_argument("file")
    p.add_argument("--point", action="append", help="restrict the listing to these points")
    add("roundtrip", "topology -> neighbourhood system -> topology").add_argument("file")
    for name, help_ in (("continuity", "continuity of a named map"), ("homeo", "is a named map a homeomorphism")):
        p = add(name, help_)
        p.add_argument("file", help="domain space; holds the map")
        p.add_argument("codomain", nargs="?", help="codomain space (default: the domain)")
        p.add_argument("--map", required=True, dest="map_name")
        if name == "continuity":
            p.add_argument("--criteria", default="all", help="'all' or a comma list of " + ",".join(c.value for c in Criterion))
    p = add("product", "product space checks")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--check", default=",".join(PRODUCT_CHECKS), help="comma list of " + ",".join(PRODUCT_CHECKS))
    p.add_argument("--max-family-size", type=_positive, default=4)
    add("base", "minimal base of a space").add_argument("file")
    p = add("compact", "finite subcovers of open covers")
    p.add_argument("file")
    p.add_argument("--max-family-size", type=_positive, default=4)
    p.add_argument("--samples", type=_positive, default=500)
    p = add("mine", "search for counterexamples to a property")
    p.add_argument("property", nargs="?", help="property name (see --list)")
    p.add_argument("--list", action="store_true", help="list property names")
    p.add_argument("--max-points", type=_positive, default=2)
    p.add_argument("--max-n", type=_positive, default=1)
    p.add_argument("--max-d", type=_positive, default=2)
    p.add_argument("--samples", type=_positive, default=200)
    p.add_argument("--disable-axiom", action="append", default=[], choices=AXIOMS)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", dest="exhaustive", action="store_const", const=True, default=None)
    mode.add_argument("--random", dest="exhaustive", action="store_const", const=False)
    return parser


@dataclass
class Report:
    command: str
    inputs: list[str]
    seed: int
    checks: list[dict[str, Any]] = field(default_factory=list)
    extra: dict[str, Any] = field(default_factory=dict)

    def add(self, name: str, ok: bool, detail: Any = None) -> bool:
        self.checks.append({"name": name, "status": "PASS" if ok else "FAIL", "detail": detail})
        return ok

    @property
    def ok(self) -> bool:
        return all(c["status"] == "PASS" for c in self.checks)

    def as_dict(self) -> dict[str, Any]:
        out = {"command": self.command, "inputs": self.inputs, "seed": self.seed, "checks": self.checks}
        out.update(self.extra)
        out["status"] = "PASS" if self.ok else "FAIL"
        return out

    def text(self) -> str:
        lines = [f"{c['name']}: {c['status']}" for c in self.checks]
        for c in self.checks:
            if c["status"] == "FAIL" and c["detail"] is not None:
                lines.append(f"  {c['name']}: {_short(c['detail'])}")
        if "properties" in self.extra:
            lines.extend(f"{k}: {v}" for k, v in self.extra["properties"].items())
        for key in ("families", "product", "mining"):
            if key in self.extra:
                lines.append(f"{key}: {_short(self.extra[key])}")
        lines.append(f"status: {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(lines) + "\n"


def _short(detail: Any) -> str:
    text = dumps(detail).replace("\n", " ")
    return " ".join(text.split())


def _load(path: str, verify: bool) -> SpaceDocument:
    try:
        return load_space(path, verify)
    except DocumentError as exc:
        raise InputError(str(exc)) from None


def _violations(report) -> list[dict[str, Any]]:
    return [
        {"rule": v.rule, "message": v.message, "witnesses": [set_to_json(w) for w in v.witnesses]}
        for v in report.violations
    ]


def _families(tau, points) -> dict[str, list]:
    return {x: [set_to_json(s) for s in nbd_family(tau, x)] for x in points}


def cmd_verify(args, rep: Report) -> None:
    doc = _load(args.file, verify=False)
    tau = doc.topology
    result = verify_axioms(tau.opens, tau.kind, tau.shape)
    rep.add(f"{tau.kind.value} axioms", result.ok, {"opens": len(tau), "violations": _violations(result)})


def cmd_nbd(args, rep: Report) -> None:
    tau = _load(args.file, not args.no_verify).topology
    points = args.point or list(tau.universe)
    for x in points:
        if x not in tau.universe:
            raise InputError(f"unknown point {x!r}")
    report = verify_nbd_axioms(nbd_from_topology(tau))
    for axiom in AXIOMS:
        bad = [v for v in report.violations if v.axiom == axiom]
        rep.add(axiom, not bad, [{"point": v.point, "message": v.message} for v in bad] or None)
    rep.extra["families"] = _families(tau, points)


def cmd_roundtrip(args, rep: Report) -> None:
    tau = _load(args.file, not args.no_verify).topology
    system = nbd_from_topology(tau)
    report = verify_nbd_axioms(system)
    rep.add("L_τ satisfies N1-N5", report.ok, sorted(report.axioms()) or None)
    back = topology_from_nbd(system, verify=False)
    rep.add("τ_{L_τ} = τ", back == tau, None if back == tau else {"recovered": to_dict(back)["opens"]})
    same = nbd_from_topology(back) == system
    rep.add("L_{τ_L} = L", same)


def _space_map(args) -> SpaceMap:
    doc = _load(args.file, not args.no_verify)
    cod = _load(args.codomain, not args.no_verify).topology if args.codomain else doc.topology
    f = _input_call(doc.point_map, args.map_name, cod.universe)
    return _input_call(SpaceMap, f, doc.topology, cod)


def _input_call(fn: Callable, *a):
    try:
        return fn(*a)
    except (DocumentError, ShapeMismatch, UnknownPoint, ValueError) as exc:
        raise InputError(str(exc)) from None


def cmd_continuity(args, rep: Report) -> None:
    m = _space_map(args)
    if args.criteria == "all":
        chosen = list(Criterion)
    else:
        try:
            chosen = [Criterion(c.strip()) for c in args.criteria.split(",") if c.strip()]
        except ValueError as exc:
            raise UsageError(f"mftop continuity: {exc}") from None
        if not chosen:
            raise UsageError("mftop continuity: --criteria is empty")
    table = continuity_table(m)
    for c in chosen:
        rep.add(f"continuous ({c.value})", table[c])
    verdicts = {c.value: table[c] for c in chosen}
    rep.add("criteria agree", len(set(verdicts.values())) == 1, verdicts)


def cmd_homeo(args, rep: Report) -> None:
    m = _space_map(args)
    rep.add("bijective", m.f.is_bijective())
    inverse_route, open_route = homeomorphism_routes(m)
    rep.add("continuous with continuous inverse", inverse_route)
    rep.add("continuous and open", open_route)
    rep.add("routes agree", inverse_route == open_route, {"inverse": inverse_route, "open": open_route})


def cmd_product(args, rep: Report) -> None:
    wanted = [c.strip() for c in args.check.split(",") if c.strip()]
    unknown = [c for c in wanted if c not in PRODUCT_CHECKS]
    if unknown or not wanted:
        raise UsageError(f"mftop product: unknown check {unknown[0] if unknown else '(none)'}; choose from {','.join(PRODUCT_CHECKS)}")
    s1 = _load(args.left, not args.no_verify).topology
    s2 = _load(args.right, not args.no_verify).topology
    p = _input_call(product_topology, s1, s2, False)
    rep.extra["product"] = {"universe": list(p.universe.points), "opens": len(p.topology), "basis": len(p.basis)}
    for check in wanted:
        if check == "basis":
            rep.add("basis is an open base", is_open_base(p.basis, p.topology))
        elif check == "projections":
            for j in (1, 2):
                pi = projection(p, j, verify=False)
                cont = continuity_table(pi)
                rep.add(f"projection {j} continuous", all(cont.values()))
                rep.add(f"projection {j} open", is_open_map(pi))
        elif check == "smallest":
            rep.add("projections generate the product topology", smallest_topology_check(p))
        elif check == "base":
            base = product_base(minimal_base(s1), minimal_base(s2), p, verify=False)
            rep.add("product of minimal bases is a base", is_open_base(base, p.topology), {"size": len(base)})
        elif check == "slices":
            bad = []
            for side, factor in (("left", s1), ("right", s2)):
                for a in factor.universe:
                    m = slice_embedding(p, a, side, verify=False)
                    if not (all(continuity_table(m).values()) and continuous_via_projections(m, p)):
                        bad.append({"side": side, "point": a})
            rep.add("slices continuous", not bad, bad or None)
        elif check == "compact":
            r = check_compact(p, max_family_size=args.max_family_size, seed=args.seed)
            rep.add("finite subcovers", r.compact, r.as_dict())
        elif check == "second-countable":
            ok, base = is_second_countable(p.topology)
            rep.add("second countable", ok, {"minimal_base": len(base)})


def cmd_base(args, rep: Report) -> None:
    tau = _load(args.file, not args.no_verify).topology
    ok, base = is_second_countable(tau)
    rep.add("minimal base is an open base", ok, {"base": [set_to_json(b) for b in base]})


def cmd_compact(args, rep: Report) -> None:
    tau = _load(args.file, not args.no_verify).topology
    r = check_compact(tau, max_family_size=args.max_family_size, samples=args.samples, seed=args.seed)
    rep.add("finite subcovers", r.compact, r.as_dict())


def cmd_mine(args, rep: Report) -> None:
    if args.list:
        rep.extra["properties"] = {name: p.summary for name, p in sorted(PROPERTIES.items())}
        return
    if not args.property:
        raise UsageError("mftop mine: a property name or --list is required")
    if args.property not in PROPERTIES:
        raise UsageError(f"mftop mine: unknown property {args.property!r}; try --list")
    bounds = Bounds(args.max_points, args.max_n, args.max_d)
    r = mine_counterexamples(
        args.property,
        bounds,
        samples=args.samples,
        seed=args.seed,
        budget_ms=args.budget_ms,
        disabled=args.disable_axiom,
        exhaustive=args.exhaustive,
    )
    rep.extra["mining"] = r.as_dict()
    rep.add("no counterexamples", r.ok, {"examined": r.examined, "counterexamples": r.counterexamples})
    rep.add("search complete", r.complete)


COMMANDS = {
    "verify": cmd_verify,
    "nbd": cmd_nbd,
    "roundtrip": cmd_roundtrip,
    "continuity": cmd_continuity,
    "homeo": cmd_homeo,
    "product": cmd_product,
    "base": cmd_base,
    "compact": cmd_compact,
    "mine": cmd_mine,
}


def _inputs(args) -> list[str]:
    return [v for k in ("file", "codomain", "left", "right", "property") if (v := getattr(args, k, None))]


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    env = os.environ.get(BUDGET_ENV)
    if env is not None:
        try:
            args.budget_ms = _nonnegative(env)
        except (ValueError, argparse.ArgumentTypeError):
            err.write(f"mftop: {BUDGET_ENV} must be a non-negative integer\n")
            return EXIT_USAGE
    rep = Report(args.command, _inputs(args), args.seed)
    start = time.perf_counter()
    try:
        COMMANDS[args.command](args, rep)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except InputError as exc:
        err.write(f"mftop {args.command}: {exc}\n")
        return EXIT_INPUT
    except AxiomViolation as exc:
        rep.add(f"{exc.report.kind.value} axioms", False, {"violations": _violations(exc.report)})
    if args.timing:
        rep.extra["timing_ms"] = round((time.perf_counter() - start) * 1000, 3)
    out.write(dumps(rep.as_dict()) if args.format == "json" else rep.text())
    return EXIT_OK if rep.ok else EXIT_FAIL


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
