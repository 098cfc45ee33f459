"""Finite multi-fuzzy topological spaces on exact grade chains."""

from .core import (
    GradeChain,
    GradeError,
    MultiFuzzySet,
    PointMap,
    Shape,
    ShapeMismatch,
    Universe,
    UnknownPoint,
    absolute,
    complement,
    constant,
    image,
    in_restricted_class,
    join,
    leq,
    meet,
    null,
    preimage,
)
from .document import DocumentError, SpaceDocument, load_space, parse_space, serialize_space
from .mining import PROPERTIES, mine_counterexamples
from .morphisms import (
    Criterion,
    SpaceMap,
    compose,
    continuity_table,
    is_continuous,
    is_continuous_via,
    is_homeomorphism,
    is_open_map,
)
from .neighborhood import (
    NbdSystem,
    is_nbd,
    nbd_family,
    nbd_from_topology,
    open_via_nbd,
    topology_from_nbd,
    verify_nbd_axioms,
)
from .product import (
    Cover,
    check_compact,
    find_finite_subcover,
    is_second_countable,
    product_base,
    product_map,
    product_topology,
    projection,
    slice_embedding,
    smallest_topology_check,
)
from .topology import (
    AxiomViolation,
    Kind,
    MultiFuzzyTopology,
    checked,
    generate,
    is_open_base,
    minimal_base,
    verify_axioms,
)

__all__ = [name for name in dir() if not name.startswith("_")]
