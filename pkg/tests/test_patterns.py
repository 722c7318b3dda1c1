"""Tests for core.patterns module."""

import numpy as np
import pytest

from core.exceptions import (
    DuplicateEndpointError,
    InvalidInvolutionError,
    OutOfRangeError,
    ResourceCapError,
    SelfArcError,
)
from core.patterns import (
    Involution,
    arcs_over_point,
    arcs_under_arc,
    canonical_key,
    count_involutions,
    crossing_count,
    dim_via_pattern,
    dim_via_q,
    dimension,
    enumerate_involutions,
    external_arcs,
    external_max_arcs,
    fixed_under_arc,
    identity,
    involution_from_arcs,
    is_maximal,
    matrix_N,
    pattern_stats,
    project,
    q_value,
)


class TestInvolution:
    """Tests for construction and validation of Involution."""

    def test_arcs_are_normalized(self):
        """Test that reversed arcs are flipped and sorted by left endpoint."""
        sigma = involution_from_arcs(7, [(6, 2), (4, 7), (1, 3)])
        assert sigma.arcs == ((1, 3), (2, 6), (4, 7))
        assert sigma.length == 3

    def test_partner_and_fixed_points(self, worked_sigma):
        assert worked_sigma.partner(2) == 6
        assert worked_sigma.partner(6) == 2
        assert worked_sigma.partner(5) == 5
        assert worked_sigma.fixed_points == (5,)
        assert worked_sigma.is_fixed(5)
        assert not worked_sigma.is_fixed(1)

    def test_equality_by_arcs(self):
        assert involution_from_arcs(4, [(3, 4), (1, 2)]) == involution_from_arcs(4, [(1, 2), (3, 4)])
        assert involution_from_arcs(4, [(1, 2)]) != involution_from_arcs(5, [(1, 2)])

    def test_duplicate_endpoint_rejected(self):
        with pytest.raises(DuplicateEndpointError) as exc_info:
            involution_from_arcs(4, [(1, 2), (2, 3)])
        assert exc_info.value.point == 2

    def test_out_of_range_rejected(self):
        with pytest.raises(OutOfRangeError) as exc_info:
            involution_from_arcs(3, [(1, 4)])
        assert exc_info.value.point == 4

    def test_self_arc_rejected(self):
        with pytest.raises(SelfArcError):
            involution_from_arcs(3, [(2, 2)])

    @pytest.mark.parametrize("n", [0, -1, True])
    def test_invalid_n_rejected(self, n):
        with pytest.raises(InvalidInvolutionError):
            Involution(n)

    def test_cycle_notation(self, worked_sigma):
        assert worked_sigma.cycle_notation() == "(1,3)(2,6)(4,7)"
        assert str(identity(3)) == "id"


class TestEnumeration:
    """Tests for enumeration of involutions."""

    @pytest.mark.parametrize(("n", "expected"), [(1, 1), (2, 2), (3, 4), (4, 10), (5, 26), (6, 76)])
    def test_count_matches_recurrence(self, n, expected):
        assert count_involutions(n) == expected
        assert len(enumerate_involutions(n)) == expected

    def test_length_filter(self):
        # k=2 in n=6: C(6,4)·3 = 45
        result = enumerate_involutions(6, 2)
        assert len(result) == 45
        assert all(sigma.length == 2 for sigma in result)

    def test_canonical_order(self):
        result = enumerate_involutions(4)
        assert result == sorted(result, key=canonical_key)
        assert result[0] == identity(4)
        assert len(set(result)) == len(result)

    def test_cap_exceeded(self):
        with pytest.raises(ResourceCapError) as exc_info:
            enumerate_involutions(6, cap=5)
        assert exc_info.value.n == 6
        assert exc_info.value.cap == 5

    def test_invalid_k(self):
        with pytest.raises(ValueError):
            enumerate_involutions(4, 3)


class TestStatistics:
    """Tests for link pattern statistics and the two dimension formulas."""

    def test_worked_example_stats(self, worked_sigma):
        stats = pattern_stats(worked_sigma)
        assert (stats.length, stats.crossings, stats.fixed_under) == (3, 2, 2)
        assert stats.per_point_fixed == {5: 2}

    def test_worked_example_dimension(self, worked_sigma):
        assert dim_via_pattern(worked_sigma) == 8
        assert dim_via_q(worked_sigma) == 8
        assert dimension(worked_sigma) == 8

    def test_q_value(self):
        sigma = involution_from_arcs(7, [(1, 6), (3, 4), (5, 7)])
        assert q_value(sigma, (5, 7)) == 3

    def test_identity_has_dimension_zero(self):
        assert dimension(identity(5)) == 0
        assert dim_via_q(identity(5)) == 0

    def test_crossing_count(self):
        assert crossing_count(involution_from_arcs(4, [(1, 3), (2, 4)])) == 1
        assert crossing_count(involution_from_arcs(4, [(1, 4), (2, 3)])) == 0

    def test_arc_neighbourhoods(self, worked_sigma):
        assert arcs_over_point(worked_sigma, 5) == [(2, 6), (4, 7)]
        assert arcs_under_arc(involution_from_arcs(6, [(1, 6), (2, 3), (4, 5)]), (1, 6)) == [(2, 3), (4, 5)]
        assert fixed_under_arc(worked_sigma, (2, 6)) == 1

    @pytest.mark.slow
    @pytest.mark.parametrize("n", range(1, 10))
    def test_formulas_agree(self, n):
        for sigma in enumerate_involutions(n):
            assert dim_via_q(sigma) == dim_via_pattern(sigma), sigma

    def test_is_maximal(self):
        assert is_maximal(involution_from_arcs(6, [(2, 3), (5, 6)]))
        assert not is_maximal(involution_from_arcs(4, [(1, 3), (2, 4)]))
        assert not is_maximal(involution_from_arcs(3, [(1, 3)]))


class TestMatrixAndArcs:
    """Tests for N_σ, external arcs and projection."""

    def test_matrix_n_ones(self, worked_sigma):
        matrix = matrix_N(worked_sigma)
        assert matrix.ones() == [(1, 3), (2, 6), (4, 7)]
        assert matrix.at(2, 6) == 1
        assert matrix.at(6, 2) == 0
        assert matrix.square_is_zero()
        assert int(np.linalg.matrix_rank(matrix.entries.astype(float))) == 3

    def test_matrix_is_read_only(self, worked_sigma):
        with pytest.raises(ValueError):
            matrix_N(worked_sigma).entries[0, 0] = 1

    def test_external_arcs(self):
        sigma = involution_from_arcs(6, [(1, 6), (2, 3), (4, 5)])
        assert external_arcs(sigma) == [(1, 6)]

    def test_external_max_arcs_empty(self):
        sigma = involution_from_arcs(11, [(1, 6), (2, 10), (4, 5), (7, 9)])
        assert external_max_arcs(sigma) == []

    def test_external_max_arcs(self):
        sigma = involution_from_arcs(11, [(1, 4), (2, 10), (5, 6), (8, 11)])
        assert external_max_arcs(sigma) == [(2, 10)]

    def test_project(self, worked_sigma):
        assert project(worked_sigma, 1, 6).arcs == ((1, 3), (2, 6))
        assert project(worked_sigma, 2, 5).arcs == ()
        assert project(worked_sigma, 1, 6).n == 7
