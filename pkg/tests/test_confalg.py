from __future__ import annotations

from fractions import Fraction

import pytest

from monoidgrowth.cayley import Subgraph, build_ball
from monoidgrowth.confalg import (
    UNIT,
    ConfPoly,
    MissingConfigurationsError,
    a_poly,
    build_kabi_table,
    lie_coordinates,
    log_poly,
    m_poly,
    phi,
)
from monoidgrowth.configurations import POINT, canonicalize

from conftest import cached_store


def elem(store, names: str) -> int:
    return store.element_of(store.presentation.word_from_names(names))


def sub_of(store, *word_names: str) -> Subgraph:
    return Subgraph(store, {elem(store, w) for w in word_names})


@pytest.fixture(scope="module")
def a2():
    return cached_store("A2", 8)


@pytest.fixture(scope="module")
def a2_table(a2):
    return build_kabi_table(a2, max_deg=4, ball_radius=6)


def test_a_poly_single_vertex(a2):
    poly = a_poly(sub_of(a2, ""), 2)
    assert poly == ConfPoly(2, {UNIT: 1, (POINT,): 1})


def test_a_poly_edge(a2):
    edge_a = canonicalize(sub_of(a2, "", "a"))
    poly = a_poly(sub_of(a2, "", "a"), 2)
    # the full subgraph on both vertices is the edge, so no point pair
    assert poly == ConfPoly(2, {UNIT: 1, (POINT,): 2, (edge_a,): 1})


def test_a_poly_radius_one_ball(a2):
    edge_a = canonicalize(sub_of(a2, "", "a"))
    edge_b = canonicalize(sub_of(a2, "", "b"))
    poly = a_poly(build_ball(a2, 1), 2)
    assert poly == ConfPoly(
        2,
        {
            UNIT: 1,
            (POINT,): 3,
            (edge_a,): 1,
            (edge_b,): 1,
            (POINT, POINT): 1,  # the pair {a, b} induces no edge
        },
    )


def test_m_poly_point(a2):
    poly = m_poly(sub_of(a2, ""), 2)
    assert poly == ConfPoly(2, {(POINT,): 1, (POINT, POINT): Fraction(-1, 2)})


def test_m_poly_edge(a2):
    edge_a = canonicalize(sub_of(a2, "", "a"))
    poly = m_poly(sub_of(a2, "", "a"), 2)
    assert poly == ConfPoly(
        2, {(POINT,): 2, (edge_a,): 1, (POINT, POINT): -1}
    )


def test_m_poly_point_coefficient_is_vertex_count(a2):
    for sub in (sub_of(a2, ""), sub_of(a2, "", "a"), build_ball(a2, 1), build_ball(a2, 2)):
        poly = m_poly(sub, 3)
        assert poly.coefficient((POINT,)) == len(sub)


def test_log_requires_unit_constant():
    with pytest.raises(ValueError):
        log_poly(ConfPoly(2, {UNIT: 2}))


def test_kabi_diagonal_и_triangularity(a2_table):
    n = len(a2_table.records)
    for i in range(n):
        assert a2_table.K[i][i] == 1
        assert a2_table.A[i][i] == 1
        for j in range(i):
            assert a2_table.A[i][j] == 0
            assert a2_table.K[i][j] == 0


def test_kabi_point_not_above_edge(a2_table, a2):
    edge_a = canonicalize(sub_of(a2, "", "a"))
    assert a2_table.kabi(edge_a, POINT) == 0


def test_kabi_inversion_identity(a2_table):
    """sum over U of (-1)^(#U - #S) K(S, U) A(U, T) must be delta(S, T)."""
    n = len(a2_table.records)
    sizes = [rec.config.size for rec in a2_table.records]
    for s in range(n):
        for t in range(n):
            total = sum(
                (-1) ** (sizes[u] - sizes[s]) * a2_table.K[s][u] * a2_table.A[u][t]
                for u in range(n)
            )
            assert total == (1 if s == t else 0)


def test_kabi_vanishing_bound(a2_table):
    rank = a2_table.store.rank
    sizes = [rec.config.size for rec in a2_table.records]
    for i, si in enumerate(sizes):
        for j, sj in enumerate(sizes):
            if sj > si * (rank - 1) + 2:
                assert a2_table.K[i][j] == 0


def test_kabi_rejects_boundary_configurations(a2):
    with pytest.raises(MissingConfigurationsError):
        build_kabi_table(a2, max_deg=4, ball_radius=2)


def test_phi_point(a2_table):
    poly = phi(a2_table, POINT, 2)
    assert poly == ConfPoly(2, {(POINT,): 1, (POINT, POINT): Fraction(-1, 2)})


def test_phi_edge_subtracts_point_square(a2_table, a2):
    edge_a = canonicalize(sub_of(a2, "", "a"))
    poly = phi(a2_table, edge_a, 2)
    assert poly == ConfPoly(2, {(edge_a,): 1, (POINT, POINT): -1})


def test_phi_leading_term(a2_table):
    for rec in a2_table.records:
        poly = phi(a2_table, rec.config, a2_table.max_deg)
        assert poly.coefficient((rec.config,)) == 1
        for mono, coeff in poly.terms.items():
            assert sum(c.size for c in mono) >= rec.config.size


def test_reconstruction_of_m_poly(a2_table):
    """sum of phi(S) * A(S, T) recovers the logarithm exactly."""
    deg = a2_table.max_deg
    for j, rec in enumerate(a2_table.records):
        target = m_poly(a2_table.representative(rec.config), deg)
        total = ConfPoly.zero(deg)
        for i, other in enumerate(a2_table.records):
            a = a2_table.A[i][j]
            if a:
                total = total + phi(a2_table, other.config, deg).scale(a)
        assert total == target


def test_lie_coordinates_of_m_poly(a2_table):
    deg = a2_table.max_deg
    for j, rec in enumerate(a2_table.records[:6]):
        coords, residual = lie_coordinates(
            a2_table, m_poly(a2_table.representative(rec.config), deg)
        )
        assert residual.is_zero()
        for i, other in enumerate(a2_table.records):
            assert coords.get(other.config, 0) == a2_table.A[i][j]


def test_lie_coordinates_of_phi(a2_table, a2):
    edge_a = canonicalize(sub_of(a2, "", "a"))
    coords, residual = lie_coordinates(a2_table, phi(a2_table, edge_a, 3))
    assert residual.is_zero()
    assert coords == {edge_a: 1}


def test_point_square_is_not_lie_like(a2_table):
    square = ConfPoly(2, {(POINT, POINT): 1})
    coords, residual = lie_coordinates(a2_table, square)
    assert coords == {}
    assert not residual.is_zero()
