from itertools import product

import pytest

from trinomial_lnd.algebra.derivation import (
    NotElementary,
    Nilpotent,
    bounded_nilpotency,
    derivation_degree,
    is_elementary,
)
from trinomial_lnd.algebra.ring import TrinomialData
from trinomial_lnd.algebra.roots import (
    NotMember,
    RootSystem,
    Witness,
    enumerate_roots_in_box,
    psi_window,
)
from trinomial_lnd.errors import EmptyBox, InvalidWitness, LengthMismatch

BOX = [(-5, 5)] * 3


def quadric_root(x, y, z):
    """Closed form for the quadric in the (x, y, z) grading: four corner cones and four layers."""
    for s, t in product((1, -1), repeat=2):
        if s * x >= 1 and t * y >= 1 and z >= s * x + t * y - 2:
            return True
    odd = (x + y + z) % 2 == 1
    for s in (1, -1):
        if odd and s * x >= 1 and z >= s * x - 1 + abs(y):
            return True
        if odd and s * y >= 1 and z >= s * y - 1 + abs(x):
            return True
    return False


@pytest.fixture
def quadric_roots(quadric_system):
    return enumerate_roots_in_box(BOX, quadric_system)


def _coordinates(system, e):
    return system.coordinates.to_coordinates(e)


def test_basic_set_offsets(quadric_system):
    offsets = {B.label: _coordinates(quadric_system, B.offset) for B in quadric_system.basic_sets}
    assert len(offsets) == 8
    corners = {offsets[label] for label in offsets if "T(2,1)" not in label}
    laterals = {offsets[label] for label in offsets if "T(2,1)" in label}
    assert corners == {(-1, -1, 0), (-1, 1, 0), (1, -1, 0), (1, 1, 0)}
    assert laterals == {(-1, 0, 0), (1, 0, 0), (0, -1, 0), (0, 1, 0)}
    assert offsets["E(T(0,1),T(1,1))"] == (-1, -1, 0)


def test_corner_vertex_is_a_root(quadric_system):
    e = quadric_system.element((-1, -1, 0))
    query = quadric_system.is_root(e)
    assert query.is_root
    assert [(B.label, w.u) for B, w in query.containing_sets] == [("E(T(0,1),T(1,1))", (0, 0, 0, 0, 0))]
    assert not query.type_one
    assert query.positions() == {0: 1, 1: 1}


def test_non_root(quadric_system):
    query = quadric_system.is_root(quadric_system.element((0, 0, 1)))
    assert not query.is_root
    assert query.count == 0
    for B in quadric_system.basic_sets:
        assert quadric_system.membership(query.element, B) is NotMember


def test_box_matches_closed_form(quadric_system, quadric_roots):
    found = {_coordinates(quadric_system, q.element) for q in quadric_roots}
    expected = {p for p in product(range(-5, 6), repeat=3) if quadric_root(*p)}
    assert found == expected


def test_root_geometry(quadric_system, quadric_roots):
    for query in quadric_roots:
        assert 1 <= query.count <= 3
        if query.type_one:
            assert query.count == 3
        for B, witness in query.containing_sets:
            if "T(2,1)" in B.label:
                assert sum(_coordinates(quadric_system, query.element)) % 2 == 1
            assert witness.u[quadric_system.trinomial.index(B.pair[0])] == 0
            assert witness.u[quadric_system.trinomial.index(B.pair[1])] == 0


@pytest.mark.parametrize("vertex", list(product((1, -1), (1, -1), (1,))))
def test_type_one_vertices(quadric_system, vertex):
    query = quadric_system.is_root(quadric_system.element(vertex))
    assert query.is_root
    assert query.type_one
    assert query.count == 3


def test_witnesses_verify(quadric_system, quadric_roots):
    fg = quadric_system.grading
    for query in quadric_roots:
        for B, witness in query.containing_sets:
            d = quadric_system.witness_derivation(query.element, B, witness)
            assert d.is_well_defined()
            assert derivation_degree(d, fg) == query.element
            assert isinstance(bounded_nilpotency(d, 10), Nilpotent)
            assert not isinstance(is_elementary(d, fg), NotElementary)


def test_invalid_witness(quadric_system):
    e = quadric_system.element((-1, -1, 0))
    B = next(B for B in quadric_system.basic_sets if B.label == "E(T(0,1),T(1,1))")
    with pytest.raises(InvalidWitness):
        quadric_system.witness_derivation(e, B, Witness((1, 0, 0, 0, 0)))
    with pytest.raises(InvalidWitness):
        quadric_system.witness_derivation(e, B, Witness((0, 0, 0, 0, 1)))
    with pytest.raises(InvalidWitness):
        quadric_system.witness_derivation(e, B, Witness((0, 0)))


def test_box_validation(quadric_system):
    with pytest.raises(LengthMismatch):
        enumerate_roots_in_box([(-1, 1)], quadric_system)
    with pytest.raises(EmptyBox):
        enumerate_roots_in_box([(1, 0), (0, 0), (0, 0)], quadric_system)


def test_monoid_membership(quadric_system):
    g = quadric_system.grading
    assert quadric_system.monoid_membership(g.g_degree)
    assert quadric_system.monoid_membership(g.group.zero())
    assert not quadric_system.monoid_membership(quadric_system.element((1, 0, 0)))
    assert not quadric_system.monoid_membership(-g.g_degree)


@pytest.mark.parametrize("t_name, lowest", [("x_y_z2", -2), ("x_y_z3", -3)])
def test_roots_of_binary_forms(request, t_name, lowest):
    system = RootSystem(request.getfixturevalue(t_name))
    W = system.functional.block_value
    window = psi_window(-W - 2, W, system)
    assert [system.psi(e) for e in window] == list(range(-W - 2, W + 1))
    for e in window:
        assert system.is_root(e).is_root == (system.psi(e) >= lowest)


def test_psi_window_needs_free_rank_one(quadric_system):
    with pytest.raises(EmptyBox):
        psi_window(-1, 1, quadric_system)


def test_psi_window_with_torsion():
    system = RootSystem(TrinomialData.of((2,), (2,), (2,)))
    window = psi_window(0, 4, system)
    assert len(window) == 4 * len({system.psi(e) for e in window})
    assert all(0 <= system.psi(e) <= 4 for e in window)


def test_pruned_membership_matches_direct_enumeration(quadric_system):
    # ψ = 4z and every offset has z = 0, so z ≤ 2 needs at most two generators in total
    for B in quadric_system.basic_sets:
        reachable = set()
        for u in product(range(3), repeat=len(B.generators)):
            e = B.offset
            for power, generator in zip(u, B.generators):
                e = e + generator * power
            reachable.add(_coordinates(quadric_system, e))
        for point in product(range(-2, 3), repeat=3):
            e = quadric_system.element(point)
            if e is None:
                continue
            found = quadric_system.membership(e, B)
            assert (found is not NotMember) == (point in reachable), (B.label, point)


def test_all_ones_roots_lie_in_at_most_three_sets():
    system = RootSystem(TrinomialData.all_ones(2, 2, 2))
    assert len(system.basic_sets) == 12
    offsets = [system.is_root(B.offset) for B in system.basic_sets]
    roots = enumerate_roots_in_box([(-1, 1)] * system.coordinates.dimension, system)
    for query in offsets + roots:
        assert 1 <= query.count <= 3
        if query.type_one:
            assert query.count == 3
