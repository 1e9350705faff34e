import pytest

from trinomial_lnd.algebra.ring import TrinomialData, fine_grading
from trinomial_lnd.algebra.semigroup import LatticeSearch, positive_functional
from trinomial_lnd.errors import GroupMismatch


def test_quadric_functional(quadric, quadric_grading):
    pf = positive_functional(quadric, quadric_grading)
    assert pf.weights == (4, 4, 4, 4, 4)
    assert pf.block_value == 8
    assert pf(quadric_grading.g_degree) == 8
    for degree, weight in zip(quadric_grading.generator_degrees, pf.weights):
        assert pf(degree) == weight


@pytest.mark.parametrize(
    "t, weights, block_value",
    [
        (TrinomialData.of((1,), (1,), (2,)), (2, 2, 1), 2),
        (TrinomialData.of((1,), (1,), (3,)), (3, 3, 1), 3),
        (TrinomialData.of((1, 2), (3,), (1, 1)), (6, 6, 6, 9, 9), 18),
    ],
)
def test_functional_weights(t, weights, block_value):
    fg = fine_grading(t)
    pf = positive_functional(t, fg)
    assert pf.weights == weights
    assert pf.block_value == block_value
    assert pf(fg.g_degree) == block_value


def test_functional_rejects_foreign_elements(x_y_z2, quadric_grading):
    pf = positive_functional(x_y_z2)
    with pytest.raises(GroupMismatch):
        pf(quadric_grading.g_degree)


def test_lattice_search_solutions(x_y_z2):
    fg = fine_grading(x_y_z2)
    pf = positive_functional(x_y_z2, fg)
    search = LatticeSearch(fg.generator_degrees, pf.weights)
    solutions = set(search.solutions(fg.g_degree, pf(fg.g_degree)))
    assert solutions == {(1, 0, 0), (0, 1, 0), (0, 0, 2)}
    assert set(search.solutions(fg.g_degree, 2, max_total=1)) == {(1, 0, 0), (0, 1, 0)}
    assert list(search.solutions(-fg.g_degree, -2)) == []
    assert search.first(fg.group.zero(), 0) == (0, 0, 0)


def test_lattice_search_counts_monomials(quadric, quadric_grading):
    pf = positive_functional(quadric, quadric_grading)
    search = LatticeSearch(quadric_grading.generator_degrees, pf.weights)
    solutions = list(search.solutions(2 * quadric_grading.g_degree, 16))
    assert len(solutions) == len(set(solutions))
    assert all(quadric_grading.degree_of(u) == 2 * quadric_grading.g_degree for u in solutions)
    assert (2, 2, 0, 0, 0) in solutions
    assert (1, 1, 0, 0, 2) in solutions
    assert (0, 0, 0, 0, 4) in solutions


def test_lattice_search_validation(x_y_z2):
    fg = fine_grading(x_y_z2)
    with pytest.raises(ValueError):
        LatticeSearch(fg.generator_degrees, (1, 1))
    with pytest.raises(ValueError):
        LatticeSearch(fg.generator_degrees, (1, 0, 1))
