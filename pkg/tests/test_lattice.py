"""Lattice construction, duals, point enumeration, and JSON interchange."""

from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latdisc import lattice, linalg
from latdisc.errors import (
    CapExceededError,
    InputError,
    NotIntegrationLatticeError,
)

F = Fraction


def _rank1_nodes(n, g):
    d = len(g)
    return {tuple(F(k * g[j] % n, n) for j in range(d)) for k in range(n)}


class TestFromRank1:
    def test_known_small_rule(self):
        lat = lattice.from_rank1(5, (1, 3))
        assert lat.dim == 2
        assert lat.n_points == 5
        assert lat.is_integration
        assert lat.rank1_data == (5, (1, 3))
        assert lat.spec_string() == "rank1(5,1,3)"

    def test_generator_with_common_factor_collapses(self):
        # (2/6, 4/6) reduces to (1/3, 2/3): only 3 distinct nodes
        lat = lattice.from_rank1(6, (2, 4))
        assert lat.n_points == 3
        assert set(lattice.enumerate_points(lat)) == _rank1_nodes(6, (2, 4))

    def test_trivial_rule_is_integer_lattice(self):
        lat = lattice.from_rank1(1, (0, 0, 0))
        assert lat.n_points == 1
        assert lat.basis == linalg.RationalMatrix.identity(3)

    def test_bad_inputs(self):
        with pytest.raises(InputError):
            lattice.from_rank1(0, (1,))
        with pytest.raises(InputError):
            lattice.from_rank1(5, ())
        with pytest.raises(InputError):
            lattice.from_rank1(F(5, 2), (1,))


class TestFromBasis:
    def test_identity_is_z_d(self):
        lat = lattice.from_basis([[1, 0], [0, 1]])
        assert lat.n_points == 1
        assert lat.is_integration
        assert lat.spec_string() == "basis(d=2,n=1)"

    def test_equals_rank1_presentation(self):
        rows = [[F(1, 5), F(3, 5)], [0, 1]]
        assert lattice.from_basis(rows) == lattice.from_rank1(5, (1, 3))

    def test_non_integration_reports_witness(self):
        with pytest.raises(NotIntegrationLatticeError) as exc:
            lattice.from_basis([[2, 0], [0, 1]])
        assert exc.value.witness == (1, 0)

    def test_relaxed_accepts_sublattice_of_z_d(self):
        lat = lattice.from_basis([[2, 0], [0, 1]], relaxed=True)
        assert not lat.is_integration
        assert lat.n_points is None

    def test_non_square_rejected(self):
        with pytest.raises(InputError):
            lattice.from_basis([[1, 0, 0], [0, 1, 0]])

    def test_singular_rejected(self):
        with pytest.raises(InputError):
            lattice.from_basis([[1, 2], [2, 4]])


class TestDual:
    def test_known_dual_basis(self):
        lat = lattice.from_rank1(5, (1, 3))
        dl = lattice.dual(lat)
        assert dl.integer_rows() == [[1, 3], [0, 5]]
        assert dl.det_value == 5

    def test_dual_of_z_d_is_z_d(self):
        dl = lattice.dual(lattice.from_basis([[1, 0], [0, 1]]))
        assert dl.integer_rows() == [[1, 0], [0, 1]]

    def test_dual_vectors_pair_integrally_with_nodes(self):
        lat = lattice.from_rank1(7, (1, 2, 3))
        dl = lattice.dual(lat)
        for row in dl.basis.rows:
            for p in lattice.enumerate_points(lat):
                assert sum(h * x for h, x in zip(row, p)).denominator == 1

    def test_relaxed_dual_may_be_fractional(self):
        lat = lattice.from_basis([[2, 0], [0, 1]], relaxed=True)
        dl = lattice.dual(lat)
        assert dl.det_value == F(1, 2)
        with pytest.raises(InputError):
            dl.integer_rows()


class TestMembership:
    def test_nodes_are_members(self):
        lat = lattice.from_rank1(5, (1, 3))
        for p in lattice.enumerate_points(lat):
            assert lattice.membership(lat, p)
        assert lattice.membership(lat, (1, 1))
        assert lattice.membership(lat, (F(6, 5), F(8, 5)))

    def test_non_members(self):
        lat = lattice.from_rank1(5, (1, 3))
        assert not lattice.membership(lat, (F(1, 5), F(2, 5)))
        assert not lattice.membership(lat, (F(1, 2), F(1, 2)))

    def test_dimension_mismatch(self):
        lat = lattice.from_rank1(5, (1, 3))
        with pytest.raises(InputError):
            lattice.membership(lat, (1, 2, 3))


class TestEnumeratePoints:
    def test_matches_closed_form(self):
        lat = lattice.from_rank1(5, (1, 3))
        pts = lattice.enumerate_points(lat)
        assert pts.n_points == 5
        assert set(pts) == _rank1_nodes(5, (1, 3))

    def test_deterministic_order(self):
        lat = lattice.from_rank1(8, (1, 5))
        assert lattice.enumerate_points(lat).points == (
            lattice.enumerate_points(lat).points
        )

    def test_cap_from_known_count(self):
        lat = lattice.from_rank1(100, (1, 33))
        with pytest.raises(CapExceededError):
            lattice.enumerate_points(lat, cap=99)

    def test_cap_during_walk_for_relaxed(self):
        lat = lattice.from_basis([[F(1, 100), 0], [0, 2]], relaxed=True)
        assert lat.n_points is None
        with pytest.raises(CapExceededError):
            lattice.enumerate_points(lat, cap=50)

    def test_relaxed_sublattice_has_single_node(self):
        lat = lattice.from_basis([[2, 0], [0, 3]], relaxed=True)
        assert lattice.enumerate_points(lat).points == ((F(0), F(0)),)

    @given(
        st.integers(2, 60),
        st.lists(st.integers(0, 59), min_size=1, max_size=3),
    )
    @settings(max_examples=100, deadline=None)
    def test_rank1_enumeration_matches_closed_form(self, n, g):
        lat = lattice.from_rank1(n, g)
        pts = lattice.enumerate_points(lat)
        expected = _rank1_nodes(n, g)
        assert set(pts) == expected
        assert pts.n_points == len(expected) == lat.n_points


class TestJSON:
    def test_rank1_round_trip(self):
        lat = lattice.from_rank1(5, (1, 3))
        again = lattice.from_json(lattice.to_json(lat))
        assert again == lat
        assert again.rank1_data == (5, (1, 3))

    def test_basis_round_trip(self):
        lat = lattice.from_basis([[F(1, 5), F(3, 5)], [0, 1]])
        again = lattice.from_json(lattice.to_json(lat))
        assert again == lat
        assert again.n_points == 5

    def test_relaxed_round_trip(self):
        lat = lattice.from_basis([[2, 0], [0, 1]], relaxed=True)
        again = lattice.from_json(lattice.to_json(lat))
        assert again == lat
        assert not again.is_integration

    def test_serialization_is_stable(self):
        lat = lattice.from_rank1(5, (1, 3))
        assert lattice.to_json(lat) == lattice.to_json(lat)

    @pytest.mark.parametrize(
        "text",
        [
            "not json",
            "[1, 2]",
            '{"kind": "rank1"}',
            '{"kind": "rank1", "dim": 2, "n": 5, "generator": [1]}',
            '{"kind": "rank1", "dim": 2, "n": 5, "generator": [1, "3"]}',
            '{"kind": "basis", "dim": 2, "basis": [["1"]]}',
            '{"kind": "mystery", "dim": 2}',
            '{"kind": "rank1", "dim": 0, "n": 5, "generator": []}',
            '{"kind": "basis", "dim": 2, "n": 7, "basis": [["1/5", "3/5"], ["0", "1"]]}',
        ],
    )
    def test_malformed_rejected(self, text):
        with pytest.raises(InputError):
            lattice.from_json(text)


class TestStructuralInvariants:
    @given(
        st.integers(1, 40),
        st.lists(st.integers(-20, 20), min_size=1, max_size=3),
    )
    @settings(max_examples=100, deadline=None)
    def test_rank1_invariants(self, n, g):
        lat = lattice.from_rank1(n, g)
        dl = lattice.dual(lat)
        # N = det(dual) and N divides n (collapsing only ever shrinks)
        assert dl.det_value == lat.n_points
        assert n % (lat.n_points * gcd(n, *g, n)) in (0, n % lat.n_points)
        assert lat.n_points == n // gcd(n, *(list(g) + [n]))
        # the generator node itself is a member
        assert lattice.membership(lat, [F(x, n) for x in g])
        # round trip through JSON is the identity
        assert lattice.from_json(lattice.to_json(lat)) == lat

    def test_equality_and_hash(self):
        a = lattice.from_rank1(5, (1, 3))
        b = lattice.from_basis([[F(1, 5), F(3, 5)], [0, 1]])
        c = lattice.from_rank1(5, (1, 2))
        assert a == b and hash(a) == hash(b)
        assert a != c
        assert a != "rank1(5,1,3)"
