import random

import pytest
from hypothesis import strategies as st

from mftop import MultiFuzzySet, Shape, generate
from mftop.instances import Bounds, all_lowen_topologies, random_topology, small_shapes


def table(s: MultiFuzzySet) -> tuple:
    return s.table


def tables(family) -> set:
    return {s.table for s in family}


def dims(shape: Shape) -> tuple[int, int, int]:
    return len(shape.universe), shape.n, shape.D


@st.composite
def shapes(draw, max_points=3, max_n=2, max_d=3, prefix="p"):
    size = draw(st.integers(1, max_points))
    n = draw(st.integers(1, max_n))
    d = draw(st.integers(1, max_d))
    return Shape.of([f"{prefix}{i}" for i in range(size)], n, d)


@st.composite
def sets_over(draw, shape: Shape, restricted: bool = False):
    rows = []
    for _ in shape.universe:
        if restricted and draw(st.booleans()):
            rows.append((0,) * shape.n)
        else:
            low = 1 if restricted else 0
            rows.append(tuple(draw(st.integers(low, shape.D)) for _ in range(shape.n)))
    return MultiFuzzySet(shape, tuple(rows))


@st.composite
def topologies(draw, max_points=3, max_n=2, max_d=3):
    shape = draw(shapes(max_points, max_n, max_d))
    seeds = draw(st.lists(sets_over(shape, restricted=True), max_size=3))
    return generate(shape, seeds)


FIXTURE_SHAPE = Shape.of(["a", "b"], 1, 2)


@pytest.fixture
def fx():
    """The space {null, C(1/2), U, C(1)} with U = [a:1, b:1/2]."""
    u = FIXTURE_SHAPE.make(a="1", b="1/2")
    return generate(FIXTURE_SHAPE, [u])


def exhaustive_corpus():
    return [t for s in small_shapes(Bounds()) for t in all_lowen_topologies(s)]


def random_corpus(count=200, seed=2024, bounds=Bounds(3, 2, 3)):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n, d = rng.randint(1, bounds.max_n), rng.randint(1, bounds.max_d)
        size = rng.randint(1, bounds.max_points)
        out.append(random_topology(rng, Shape.of([f"p{i}" for i in range(size)], n, d)))
    return out


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
