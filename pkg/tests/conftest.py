import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from saidball.basis import NodeSet

DATA = Path(__file__).resolve().parent.parent / "data"

EXAMPLE_NODES = (
    "1/16 1/13 2/11 3/13 1/4 7/18 2/5 4/9 7/15 17/30 15/26 9/13 7/10 8/11 5/6 20/21"
).split()
EXAMPLE_RHS = [12, -3, 0, 1, 5, -7, 0, 2, 21, -4, 0, 9, -11, 6, -8, 0]


def example_nodes() -> NodeSet:
    return NodeSet(tuple(Fraction(s) for s in EXAMPLE_NODES))


def random_rational_nodes(rng: random.Random, n: int, den: int = 1000) -> NodeSet:
    """n+1 distinct rationals k/den in (0, 1), sorted."""
    picks = sorted(rng.sample(range(1, den), n + 1))
    return NodeSet(tuple(Fraction(k, den) for k in picks))


def random_float_nodes(rng: random.Random, n: int) -> NodeSet:
    picks = sorted(rng.sample(range(1, 10**6), n + 1))
    return NodeSet(tuple(k / 10**6 for k in picks))


def jittered_float_nodes(rng: random.Random, n: int) -> NodeSet:
    """One random node per cell of an even grid, keeping nodes apart."""
    N = n + 1
    return NodeSet(tuple((i + 0.25 + 0.5 * rng.random()) / N for i in range(N)))


@st.composite
def rational_node_sets(draw, min_degree=0, max_degree=8):
    n = draw(st.integers(min_degree, max_degree))
    den = draw(st.sampled_from([97, 360, 1000, 1024, 7919]))
    ks = draw(
        st.lists(st.integers(1, den - 1), min_size=n + 1, max_size=n + 1, unique=True)
    )
    return NodeSet(tuple(Fraction(k, den) for k in sorted(ks)))


@pytest.fixture
def rng():
    return random.Random(20080301)


@pytest.fixture(scope="session")
def example16():
    return example_nodes()


@pytest.fixture
def two_nodes():
    return NodeSet((Fraction(1, 4), Fraction(1, 2)))


@pytest.fixture
def four_nodes():
    return NodeSet((Fraction(1, 5), Fraction(2, 5), Fraction(3, 5), Fraction(4, 5)))


# one summary line per acceptance criterion, printed at the end of the run
ACCEPTANCE: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
