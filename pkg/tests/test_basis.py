import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import rational_node_sets
from saidball.basis import NodeSet, binomial, build_matrix, eval_basis, eval_poly
from saidball.errors import IndexRangeError, InvalidNodesError
from saidball.oracle import condition_2

half = Fraction(1, 2)


def test_binomial_matches_pascal():
    row = [1]
    for m in range(1, 30):
        row = [1] + [a + b for a, b in zip(row, row[1:])] + [1]
        assert [binomial(m, k) for k in range(m + 1)] == row


def test_degree_one_basis(rng):
    for _ in range(20):
        t = Fraction(rng.randint(1, 99), 100)
        assert eval_basis(1, 0, t) == 1 - t
        assert eval_basis(1, 1, t) == t


def test_degree_two_middle_term():
    # hand evaluation: 2 t (1 - t) at t = 1/2
    expected = 2 * half * (1 - half)
    assert expected == half
    assert eval_basis(2, 1, half) == expected


def test_degree_three_interior_term():
    # hand evaluation: 2 t (1 - t)^2 at t = 1/2
    expected = 2 * half * (1 - half) ** 2
    assert expected == Fraction(1, 4)
    assert eval_basis(3, 1, half) == expected


def test_cubic_differs_from_bernstein():
    # Ball cubic: 2t(1-t)^2, 2t^2(1-t); Bernstein: 3t(1-t)^2, 3t^2(1-t)
    assert eval_basis(3, 1, half) != 3 * half * (1 - half) ** 2
    assert eval_basis(3, 2, half) != 3 * half**2 * (1 - half)


@pytest.mark.parametrize("n", [1, 2])
def test_low_degree_equals_bernstein(n):
    t = Fraction(3, 7)
    for i in range(n + 1):
        assert eval_basis(n, i, t) == binomial(n, i) * t**i * (1 - t) ** (n - i)


def test_index_out_of_range():
    with pytest.raises(IndexRangeError):
        eval_basis(3, 4, half)
    with pytest.raises(IndexRangeError):
        eval_basis(3, -1, half)


def test_partition_of_unity_random():
    rng = random.Random(7)
    for _ in range(1000):
        n = rng.randint(0, 12)
        t = Fraction(rng.randint(1, 10**6 - 1), 10**6)
        assert sum(eval_basis(n, i, t) for i in range(n + 1)) == 1


@given(st.integers(0, 15), st.fractions(min_value=0, max_value=1).filter(lambda t: 0 < t < 1))
def test_basis_positive(n, t):
    assert all(eval_basis(n, i, t) > 0 for i in range(n + 1))


@given(st.integers(1, 15), st.fractions(min_value=0, max_value=1).filter(lambda t: 0 < t < 1))
def test_first_function_is_pure_power(n, t):
    assert eval_basis(n, 0, t) == (1 - t) ** (n // 2 + 1)


def test_eval_poly_constants(rng):
    assert eval_poly([1], half) == 1
    for n in range(1, 8):
        t = Fraction(rng.randint(1, 99), 100)
        assert eval_poly([1] * (n + 1), t) == 1
        e0 = [1] + [0] * n
        assert eval_poly(e0, t) == (1 - t) ** (n // 2 + 1)


def test_eval_poly_single_basis_term():
    assert eval_poly([0, 1, 0, 0], half) == eval_basis(3, 1, half) == Fraction(1, 4)


def test_build_matrix_two_nodes(two_nodes):
    assert build_matrix(two_nodes) == [
        [Fraction(3, 4), Fraction(1, 4)],
        [Fraction(1, 2), Fraction(1, 2)],
    ]


@settings(max_examples=60, deadline=None)
@given(rational_node_sets(max_degree=10))
def test_matrix_rows_sum_to_one_and_positive(nodes):
    A = build_matrix(nodes)
    assert all(sum(row) == 1 for row in A)
    assert all(x > 0 for row in A for x in row)


def test_matrix_float_mode_close_to_exact(example16):
    A = np.array(build_matrix(example16.to_float()))
    E = np.array([[float(x) for x in r] for r in build_matrix(example16)])
    np.testing.assert_allclose(A, E, rtol=1e-13)


@pytest.mark.slow
def test_example_matrix_condition_number(example16):
    kappa = condition_2(build_matrix(example16), digits=4)
    assert f"{kappa:.1e}".lower() == "3.2e+8"


class TestNodeSet:
    def test_degree_and_parity(self, four_nodes, two_nodes):
        assert four_nodes.degree == 3 and four_nodes.parity == "odd"
        assert NodeSet((half,)).parity == "even"
        assert two_nodes.exact and not two_nodes.to_float().exact

    @pytest.mark.parametrize(
        "nodes",
        [(0, half), (half, 1), (Fraction(1, 3), Fraction(1, 3)), (half, Fraction(1, 4)), ()],
    )
    def test_rejects(self, nodes):
        with pytest.raises(InvalidNodesError):
            NodeSet(nodes)

    def test_message_names_offending_pair(self):
        with pytest.raises(InvalidNodesError, match=r"t2 = 1/2 >= t3 = 1/3"):
            NodeSet((Fraction(1, 4), half, Fraction(1, 3)))

    def test_parse(self):
        lines = ["# nodes", "1/4", "", "0.5  # decimal", "3/4"]
        assert NodeSet.parse(lines).nodes == (Fraction(1, 4), half, Fraction(3, 4))

    def test_parse_sort_flag(self):
        with pytest.raises(InvalidNodesError):
            NodeSet.parse(["1/2", "1/4"])
        assert NodeSet.parse(["1/2", "1/4"], sort=True).nodes == (Fraction(1, 4), half)
