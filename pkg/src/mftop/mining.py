"""Counterexample mining: evaluate a property on many small instances.

Each registered property knows how to enumerate its instances exhaustively
(small bounds) or draw them at random, and how to check one instance. A
report lists how many instances were examined, how many failed, and the
smallest failing instance in full.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Iterator

import numpy as np

from . import _grid
from .core import (
    MultiFuzzySet,
    PointMap,
    absolute,
    complement,
    image,
    join,
    leq,
    meet,
    null,
    preimage,
)
from .document import set_to_json, to_dict
from .instances import (
    Bounds,
    all_bare_families,
    all_lowen_topologies,
    all_maps,
    all_sets,
    random_map,
    random_restricted_set,
    random_set,
    random_shape,
    random_topology,
    restricted_sets,
    small_shapes,
)
from .morphisms import (
    SpaceMap,
    compose,
    continuity_table,
    homeomorphism_routes,
    is_continuous,
    is_open_map,
)
from .neighborhood import (
    _dominated_at,
    nbd_family,
    nbd_from_topology,
    open_via_nbd,
    topology_from_nbd,
    verify_nbd_axioms,
)
from .product import (
    _cached_product,
    check_compact,
    continuous_via_projections,
    is_second_countable,
    product_base,
    product_map,
    projection,
    slice_embedding,
    smallest_topology_check,
)
from .topology import (
    Kind,
    MultiFuzzyTopology,
    generate_plain,
    is_open_base,
    minimal_base,
    verify_axioms,
)


@dataclass(frozen=True)
class Instance:
    spaces: tuple[MultiFuzzyTopology, ...] = ()
    maps: tuple[tuple[int | None, int | None, PointMap], ...] = ()
    sets: tuple[MultiFuzzySet, ...] = ()

    def size(self) -> tuple:
        shapes = [s.shape for s in self.spaces] + [s.shape for s in self.sets]
        return (
            sum(len(s.universe) for s in shapes),
            max((s.n for s in shapes), default=0),
            max((s.D for s in shapes), default=0),
            sum(len(s) for s in self.spaces),
        )

    def to_json(self) -> dict:
        return {
            "spaces": [to_dict(s) for s in self.spaces],
            "maps": [
                {
                    "domain": src if src is not None else list(f.domain.points),
                    "codomain": dst if dst is not None else list(f.codomain.points),
                    "assignment": f.as_dict(),
                }
                for src, dst, f in self.maps
            ],
            "sets": [set_to_json(s) for s in self.sets],
        }

    def space_map(self, k: int = 0) -> SpaceMap:
        src, dst, f = self.maps[k]
        return SpaceMap(f, self.spaces[src], self.spaces[dst])


@dataclass(frozen=True)
class Options:
    disabled: frozenset[str] = frozenset()
    seed: int = 0


Check = Callable[[Instance, Options], list[str]]


@dataclass(frozen=True)
class Property:
    name: str
    summary: str
    family: str
    check: Check


# instance corpora -----------------------------------------------------------


def _spaces(bounds: Bounds) -> list[MultiFuzzyTopology]:
    return [t for s in small_shapes(bounds) for t in all_lowen_topologies(s)]


def _grouped(spaces: Iterable[MultiFuzzyTopology]) -> dict:
    groups: dict = {}
    for s in spaces:
        groups.setdefault((s.n, s.chain.denominator), []).append(s)
    return groups


def exhaustive_sets(bounds: Bounds) -> Iterator[Instance]:
    for (n, d), shapes in _grouped_shapes(bounds).items():
        for sx, sy in product(shapes, repeat=2):
            xs, ys = all_sets(sx), all_sets(sy)
            for f in all_maps(sx.universe, sy.universe):
                for f1, f2 in product(xs, repeat=2):
                    for g1, g2 in product(ys, repeat=2):
                        yield Instance(maps=((None, None, f),), sets=(f1, f2, f1 & f2, g1, g2, g1 | g2))


def _grouped_shapes(bounds: Bounds) -> dict:
    groups: dict = {}
    for s in small_shapes(bounds):
        groups.setdefault((s.n, s.D), []).append(s)
    return groups


def random_sets(rng: random.Random, bounds: Bounds) -> Instance:
    n, d = rng.randint(1, bounds.max_n), rng.randint(1, bounds.max_d)
    sx = random_shape(rng, bounds, "x", n, d)
    sy = random_shape(rng, bounds, "y", n, d)
    f = random_map(rng, sx.universe, sy.universe)
    xs = tuple(random_set(rng, sx) for _ in range(3))
    ys = tuple(random_set(rng, sy) for _ in range(3))
    return Instance(maps=((None, None, f),), sets=xs + ys)


def exhaustive_spaces(bounds: Bounds) -> Iterator[Instance]:
    for t in _spaces(bounds):
        yield Instance(spaces=(t,))


def random_spaces(rng: random.Random, bounds: Bounds) -> Instance:
    return Instance(spaces=(random_topology(rng, random_shape(rng, bounds)),))


def exhaustive_systems(bounds: Bounds) -> Iterator[Instance]:
    for s in small_shapes(bounds):
        for t in all_lowen_topologies(s):
            yield Instance(spaces=(t,))
        for fam in all_bare_families(s):
            yield Instance(spaces=(MultiFuzzyTopology(s, fam),))


def random_systems(rng: random.Random, bounds: Bounds) -> Instance:
    shape = random_shape(rng, bounds)
    if rng.random() < 0.5:
        return Instance(spaces=(random_topology(rng, shape),))
    seeds = [random_restricted_set(rng, shape) for _ in range(rng.randint(0, 3))]
    return Instance(spaces=(MultiFuzzyTopology(shape, generate_plain(shape, seeds)),))


def exhaustive_maps(bounds: Bounds) -> Iterator[Instance]:
    for group in _grouped(_spaces(bounds)).values():
        for a, b in product(group, repeat=2):
            for f in all_maps(a.universe, b.universe):
                yield Instance(spaces=(a, b), maps=((0, 1, f),))


def random_maps(rng: random.Random, bounds: Bounds) -> Instance:
    n, d = rng.randint(1, bounds.max_n), rng.randint(1, bounds.max_d)
    a = random_topology(rng, random_shape(rng, bounds, "x", n, d))
    b = random_topology(rng, random_shape(rng, bounds, "y", n, d))
    if rng.random() < 0.2 and len(a.universe) == len(b.universe):
        pts = list(b.universe.points)
        rng.shuffle(pts)
        f = PointMap(a.universe, b.universe, tuple(pts))
    else:
        f = random_map(rng, a.universe, b.universe)
    return Instance(spaces=(a, b), maps=((0, 1, f),))


def _premise_maps(bounds: Bounds, premise) -> list[SpaceMap]:
    out = []
    for inst in exhaustive_maps(bounds):
        m = inst.space_map()
        if premise(m):
            out.append(m)
    return out


def exhaustive_chains(bounds: Bounds) -> Iterator[Instance]:
    """Composable pairs f, g where f or g satisfies a premise worth testing."""
    for group in _grouped(_spaces(bounds)).values():
        outgoing: dict = {}
        for a, b in product(group, repeat=2):
            for f in all_maps(a.universe, b.universe):
                m = SpaceMap(f, a, b)
                if is_continuous(m) or is_open_map(m):
                    outgoing.setdefault(id(a), []).append(m)
        for first_list in outgoing.values():
            for first in first_list:
                for second in outgoing.get(id(first.codomain), []):
                    yield Instance(
                        spaces=(first.domain, first.codomain, second.codomain),
                        maps=((0, 1, first.f), (1, 2, second.f)),
                    )


def random_chains(rng: random.Random, bounds: Bounds) -> Instance:
    n, d = rng.randint(1, bounds.max_n), rng.randint(1, bounds.max_d)
    spaces = tuple(random_topology(rng, random_shape(rng, bounds, p, n, d)) for p in "xyz")
    f = _biased_map(rng, spaces[0], spaces[1])
    g = _biased_map(rng, spaces[1], spaces[2])
    return Instance(spaces=spaces, maps=((0, 1, f), (1, 2, g)))


def _biased_map(rng: random.Random, a: MultiFuzzyTopology, b: MultiFuzzyTopology, tries: int = 8) -> PointMap:
    """A random map, preferring continuous or open ones so premises are exercised."""
    f = random_map(rng, a.universe, b.universe)
    for _ in range(tries):
        m = SpaceMap(f, a, b)
        if is_continuous(m) or is_open_map(m):
            return f
        f = random_map(rng, a.universe, b.universe)
    return PointMap.const(a.universe, b.universe, b.universe.points[0])


def exhaustive_pairs(bounds: Bounds) -> Iterator[Instance]:
    for group in _grouped(_spaces(bounds)).values():
        for a, b in product(group, repeat=2):
            yield Instance(spaces=(a, b))


def random_pairs(rng: random.Random, bounds: Bounds) -> Instance:
    n, d = rng.randint(1, bounds.max_n), rng.randint(1, bounds.max_d)
    return Instance(spaces=tuple(random_topology(rng, random_shape(rng, bounds, p, n, d)) for p in "xy"))


def _exhaustive_map_pairs(premise) -> Callable[[Bounds], Iterator[Instance]]:
    def gen(bounds: Bounds) -> Iterator[Instance]:
        groups: dict = {}
        for m in _premise_maps(bounds, premise):
            groups.setdefault((m.domain.n, m.domain.chain.denominator), []).append(m)
        for maps in groups.values():
            for i, m1 in enumerate(maps):
                for m2 in maps[i:]:
                    yield Instance(
                        spaces=(m1.domain, m1.codomain, m2.domain, m2.codomain),
                        maps=((0, 1, m1.f), (2, 3, m2.f)),
                    )

    return gen


def random_map_pairs(rng: random.Random, bounds: Bounds) -> Instance:
    n, d = rng.randint(1, bounds.max_n), rng.randint(1, bounds.max_d)
    spaces = tuple(random_topology(rng, random_shape(rng, bounds, p, n, d)) for p in ("x", "y", "u", "v"))
    f1 = _biased_map(rng, spaces[0], spaces[1])
    f2 = _biased_map(rng, spaces[2], spaces[3])
    return Instance(spaces=spaces, maps=((0, 1, f1), (2, 3, f2)))


# checks ---------------------------------------------------------------------


def check_lattice_laws(inst: Instance, opts: Options) -> list[str]:
    a, b, c = inst.sets[:3]
    out = []
    if meet(a, b) != meet(b, a) or join([a, b]) != join([b, a]):
        out.append("commutativity")
    if meet(meet(a, b), c) != meet(a, meet(b, c)) or join([join([a, b]), c]) != join([a, join([b, c])]):
        out.append("associativity")
    if meet(a, a) != a or join([a, a]) != a:
        out.append("idempotence")
    if meet(a, join([a, b])) != a or join([a, meet(a, b)]) != a:
        out.append("absorption")
    if complement(join([a, b])) != meet(complement(a), complement(b)):
        out.append("De Morgan (complement of join)")
    if complement(meet(a, b)) != join([complement(a), complement(b)]):
        out.append("De Morgan (complement of meet)")
    if complement(complement(a)) != a:
        out.append("involution")
    return out


def check_image_preimage(inst: Instance, opts: Options) -> list[str]:
    f = inst.maps[0][2]
    fs, gs = inst.sets[:3], inst.sets[3:]
    sx, sy = fs[0].shape, gs[0].shape
    out = []
    if image(f, null(sx)) != null(sy):
        out.append("image of the null set is not null")
    f1, f2 = fs[0], fs[0] & fs[1]
    if leq(f2, f1) and not leq(image(f, f2), image(f, f1)):
        out.append("image is not monotone")
    if not leq(image(f, meet(fs[0], meet(fs[1], fs[2]))), meet(image(f, fs[0]), meet(image(f, fs[1]), image(f, fs[2])))):
        out.append("image of a meet exceeds the meet of images")
    if image(f, join(fs)) != join([image(f, s) for s in fs]):
        out.append("image does not preserve joins")
    if preimage(f, null(sy)) != null(sx) or preimage(f, absolute(sy)) != absolute(sx):
        out.append("preimage of null/absolute set is wrong")
    g1, g2 = gs[0] & gs[1], gs[0]
    if leq(g1, g2) and not leq(preimage(f, g1), preimage(f, g2)):
        out.append("preimage is not monotone")
    if preimage(f, join(gs)) != join([preimage(f, g) for g in gs]):
        out.append("preimage does not preserve joins")
    if preimage(f, meet(gs[0], meet(gs[1], gs[2]))) != meet(preimage(f, gs[0]), meet(preimage(f, gs[1]), preimage(f, gs[2]))):
        out.append("preimage does not preserve meets")
    for g in gs:
        if preimage(f, complement(g)) != complement(preimage(f, g)):
            out.append("preimage does not commute with complement")
            break
    for s in fs:
        back = preimage(f, image(f, s))
        if not leq(s, back) or (f.is_injective() and back != s):
            out.append("set versus preimage of its image")
            break
    for g in gs:
        there = image(f, preimage(f, g))
        if not leq(there, g) or (f.is_surjective() and there != g):
            out.append("image of the preimage versus the set")
            break
    return out


def check_composition(inst: Instance, opts: Options) -> list[str]:
    f, g = inst.space_map(0), inst.space_map(1)
    gf = compose(f, g)
    out = []
    if is_continuous(f) and is_continuous(g) and not is_continuous(gf):
        out.append("composite of continuous maps is not continuous")
    if is_open_map(f) and is_open_map(g) and not is_open_map(gf):
        out.append("composite of open maps is not open")
    for h in inst.spaces[2].opens:
        if gf.preimage(h) != f.preimage(g.preimage(h)):
            out.append("preimage under the composite is not the iterated preimage")
            break
    return out


def check_homeomorphism(inst: Instance, opts: Options) -> list[str]:
    both_ways, cont_open = homeomorphism_routes(inst.space_map())
    if both_ways != cont_open:
        return [f"inverse-continuity gives {both_ways}, continuity+openness gives {cont_open}"]
    return []


def check_nbd_meet(inst: Instance, opts: Options) -> list[str]:
    tau = inst.spaces[0]
    shape = tau.shape
    for x in tau.universe:
        fam = _grid.as_array(nbd_family(tau, x), shape)
        if not len(fam):
            continue
        inside = _grid.lookup(_grid.encode(fam, shape), shape)
        meets = np.minimum(fam[:, None, :], fam[None, :, :]).reshape(-1, shape.width)
        if not inside(_grid.encode(meets, shape)).all():
            return [f"meet of two neighbourhoods of {x} is not a neighbourhood"]
    return []


def check_open_via_nbd(inst: Instance, opts: Options) -> list[str]:
    tau = inst.spaces[0]
    for a in restricted_sets(tau.shape):
        if open_via_nbd(a, tau) != (a in tau):
            return [f"local-witness test disagrees with membership for {a!r}"]
    return []


def check_nbd_axioms(inst: Instance, opts: Options) -> list[str]:
    tau = inst.spaces[0]
    system = nbd_from_topology(tau)
    report = verify_nbd_axioms(system, opts.disabled)
    out = [f"{v.axiom} fails at {v.point}: {v.message}" for v in report.violations]
    shape = tau.shape
    grid = _grid.grid(shape)
    for xi, x in enumerate(shape.universe):
        members = system.digits(x)
        if not len(members):
            continue
        inside = _grid.lookup(system.codes(x), shape)
        upward = _dominated_at(members, grid, shape, xi)
        if (upward & ~inside(np.arange(len(grid)))).any():
            out.append(f"neighbourhoods of {x} are not closed upward at fixed grade")
        joins = np.maximum(members[:, None, :], members[None, :, :]).reshape(-1, shape.width)
        if not inside(_grid.encode(joins, shape)).all():
            out.append(f"neighbourhoods of {x} are not closed under joins")
    return out


def _system_side(rho: MultiFuzzyTopology, opts: Options) -> list[str]:
    system = nbd_from_topology(rho)
    report = verify_nbd_axioms(system, opts.disabled)
    if not report.ok:
        return []
    tau = topology_from_nbd(system, verify=False)
    recovered = verify_axioms(tau.opens, Kind.LOWEN, tau.shape)
    if not recovered.ok:
        return [f"accepted system yields a non-topology ({', '.join(sorted(recovered.rules()))})"]
    if nbd_from_topology(tau) != system:
        return ["neighbourhoods of the derived topology differ from the system"]
    return []


def check_nbd_to_topology(inst: Instance, opts: Options) -> list[str]:
    return _system_side(inst.spaces[0], opts)


def check_nbd_roundtrip(inst: Instance, opts: Options) -> list[str]:
    rho = inst.spaces[0]
    out = []
    if verify_axioms(rho.opens, Kind.LOWEN, rho.shape).ok:
        system = nbd_from_topology(rho)
        report = verify_nbd_axioms(system, opts.disabled)
        if not report.ok:
            out.append("neighbourhood system of a topology fails " + ",".join(sorted(report.axioms())))
        elif topology_from_nbd(system, verify=False) != rho:
            out.append("topology recovered from its neighbourhood system differs")
    return out + _system_side(rho, opts)


def check_continuity_criteria(inst: Instance, opts: Options) -> list[str]:
    table = continuity_table(inst.space_map())
    if len(set(table.values())) > 1:
        return ["criteria disagree: " + ", ".join(f"{c.value}={v}" for c, v in table.items())]
    return []


def check_basic_maps(inst: Instance, opts: Options) -> list[str]:
    a, b = inst.spaces[:2]
    out = []
    if not is_continuous(SpaceMap.identity(a)):
        out.append("identity is not continuous")
    for y in b.universe:
        if not is_continuous(SpaceMap.const(a, b, y)):
            out.append(f"constant map onto {y} is not continuous")
    return out


def _product(a: MultiFuzzyTopology, b: MultiFuzzyTopology):
    return _cached_product(a, b)


def check_product_base(inst: Instance, opts: Options) -> list[str]:
    p = _product(*inst.spaces[:2])
    return [] if is_open_base(p.basis, p.topology) else ["factor products are not an open base"]


def check_projections(inst: Instance, opts: Options) -> list[str]:
    p = _product(*inst.spaces[:2])
    out = []
    for j in (1, 2):
        pi = projection(p, j, verify=False)
        if not is_continuous(pi):
            out.append(f"projection {j} is not continuous")
        if not is_open_map(pi):
            out.append(f"projection {j} is not open")
    if not smallest_topology_check(p):
        out.append("projection preimages do not generate the product topology")
    left = inst.spaces[0]
    rng = random.Random(opts.seed)
    maps = list(all_maps(left.universe, p.universe)) if len(p.universe) ** len(left.universe) <= 64 else [
        random_map(rng, left.universe, p.universe) for _ in range(16)
    ]
    for f in maps:
        m = SpaceMap(f, left, p.topology)
        if is_continuous(m) != continuous_via_projections(m, p):
            out.append("continuity into the product disagrees with continuity of both components")
            break
    return out


def check_slices(inst: Instance, opts: Options) -> list[str]:
    p = _product(*inst.spaces[:2])
    out = []
    for side, factor in (("left", p.left), ("right", p.right)):
        for a in factor.universe:
            m = slice_embedding(p, a, side, verify=False)
            if not is_continuous(m) or not continuous_via_projections(m, p):
                out.append(f"slice through {a} ({side}) is not continuous")
    return out


def _product_map_check(inst: Instance, premise, conclusion, label) -> list[str]:
    m1, m2 = inst.space_map(0), inst.space_map(1)
    if not (premise(m1) and premise(m2)):
        return []
    pm = product_map(m1, m2, verify=False)
    return [] if conclusion(pm.map) else [f"product of {label} maps is not {label}"]


def check_product_map_open(inst: Instance, opts: Options) -> list[str]:
    return _product_map_check(inst, is_open_map, is_open_map, "open")


def check_product_map_continuous(inst: Instance, opts: Options) -> list[str]:
    return _product_map_check(inst, is_continuous, is_continuous, "continuous")


def check_second_countable(inst: Instance, opts: Options) -> list[str]:
    p = _product(*inst.spaces[:2])
    out = []
    try:
        base = product_base(minimal_base(p.left), minimal_base(p.right), p, verify=False)
        if not is_open_base(base, p.topology):
            out.append("products of factor bases are not a base of the product")
    except ValueError as exc:
        out.append(str(exc))
    if not is_second_countable(p.topology)[0]:
        out.append("minimal base of the product is not a base")
    return out


def check_compact_product(inst: Instance, opts: Options) -> list[str]:
    p = _product(*inst.spaces[:2])
    report = check_compact(p, max_family_size=4, samples=100, seed=opts.seed)
    return list(report.failures)


PROPERTIES: dict[str, Property] = {
    p.name: p
    for p in [
        Property("lattice-laws", "meet/join/complement satisfy the lattice and De Morgan laws", "sets", check_lattice_laws),
        Property("image-preimage", "image and preimage laws", "sets", check_image_preimage),
        Property("composition", "composites of continuous (open) maps are continuous (open)", "chains", check_composition),
        Property("homeomorphism-criteria", "for bijections: continuous both ways iff continuous and open", "maps", check_homeomorphism),
        Property("nbd-meet", "meets of neighbourhoods are neighbourhoods", "spaces", check_nbd_meet),
        Property("open-via-nbd", "openness equals the local-witness criterion", "spaces", check_open_via_nbd),
        Property("nbd-axioms", "neighbourhood families of a topology satisfy N1-N5", "spaces", check_nbd_axioms),
        Property("nbd-to-topology", "a valid system yields a topology whose neighbourhoods are the system", "systems", check_nbd_to_topology),
        Property("nbd-roundtrip", "topology -> neighbourhood system -> topology is the identity, and back", "systems", check_nbd_roundtrip),
        Property("continuity-criteria", "the four continuity criteria agree", "maps", check_continuity_criteria),
        Property("basic-maps", "identity and constant maps are continuous", "pairs", check_basic_maps),
        Property("product-base", "factor products form an open base", "pairs", check_product_base),
        Property("projections", "projections are continuous and open and induce the product topology", "pairs", check_projections),
        Property("slice-embeddings", "slices x -> (a, x) and x -> (x, a) are continuous", "pairs", check_slices),
        Property("product-map-open", "products of open maps are open", "open-map-pairs", check_product_map_open),
        Property("product-map-continuous", "products of continuous maps are continuous", "continuous-map-pairs", check_product_map_continuous),
        Property("second-countable-product", "products of factor bases form a base of the product", "pairs", check_second_countable),
        Property("compact-product", "every open cover of a product has a finite subcover", "pairs", check_compact_product),
    ]
}

_FAMILIES = {
    "sets": (exhaustive_sets, random_sets),
    "spaces": (exhaustive_spaces, random_spaces),
    "systems": (exhaustive_systems, random_systems),
    "maps": (exhaustive_maps, random_maps),
    "chains": (exhaustive_chains, random_chains),
    "pairs": (exhaustive_pairs, random_pairs),
    "open-map-pairs": (_exhaustive_map_pairs(is_open_map), random_map_pairs),
    "continuous-map-pairs": (_exhaustive_map_pairs(is_continuous), random_map_pairs),
}


@dataclass
class MiningReport:
    name: str
    mode: str
    seed: int
    bounds: Bounds
    samples: int
    disabled: frozenset[str]
    examined: int = 0
    counterexamples: int = 0
    complete: bool = True
    witness: dict | None = None
    _witness_size: tuple | None = field(default=None, repr=False)

    @property
    def ok(self) -> bool:
        return self.counterexamples == 0

    def as_dict(self) -> dict:
        return {
            "property": self.name,
            "mode": self.mode,
            "seed": self.seed,
            "bounds": {"max_points": self.bounds.max_points, "max_n": self.bounds.max_n, "max_d": self.bounds.max_d},
            "samples": self.samples if self.mode == "random" else None,
            "disabled_axioms": sorted(self.disabled),
            "examined": self.examined,
            "counterexamples": self.counterexamples,
            "complete": self.complete,
            "witness": self.witness,
        }


def mine_counterexamples(
    name: str,
    bounds: Bounds = Bounds(),
    samples: int = 200,
    seed: int = 0,
    budget_ms: int | None = None,
    disabled: Iterable[str] = (),
    exhaustive: bool | None = None,
) -> MiningReport:
    """Search for instances on which property ``name`` fails.

    Instances are enumerated when the bounds are small (or ``exhaustive`` is
    forced) and drawn at random otherwise. The smallest failing instance is
    kept as the witness. Running out of ``budget_ms`` marks the report
    incomplete.
    """
    if name not in PROPERTIES:
        raise KeyError(f"unknown property {name!r}; known: {', '.join(sorted(PROPERTIES))}")
    prop = PROPERTIES[name]
    opts = Options(frozenset(disabled), seed)
    if exhaustive is None:
        exhaustive = bounds.is_small()
    enumerate_all, draw = _FAMILIES[prop.family]
    report = MiningReport(name, "exhaustive" if exhaustive else "random", seed, bounds, samples, opts.disabled)
    deadline = None if budget_ms is None else time.monotonic() + budget_ms / 1000
    if exhaustive:
        source: Iterable[Instance] = enumerate_all(bounds)
    else:
        rng = random.Random(seed)
        source = (draw(rng, bounds) for _ in range(samples))
    for inst in source:
        if deadline is not None and time.monotonic() > deadline:
            report.complete = False
            break
        report.examined += 1
        failures = prop.check(inst, opts)
        if failures:
            report.counterexamples += 1
            size = inst.size()
            if report._witness_size is None or size < report._witness_size:
                report._witness_size = size
                report.witness = {"index": report.examined - 1, "failures": failures, "instance": inst.to_json()}
    return report
