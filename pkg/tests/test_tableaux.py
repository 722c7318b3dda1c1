"""Tests for core.tableaux module."""

import pytest

from core.exceptions import DescentAtIError, InvalidTableauError, NotMaximalError
from core.meanders import codim1_criterion, intersection_codim
from core.patterns import dimension, enumerate_involutions, involution_from_arcs, is_maximal
from core.tableaux import (
    TwoColumnTableau,
    closure_tableaux,
    closure_tableaux_via_external_arcs,
    descent_set,
    descent_set_via_sigma,
    enumerate_tableaux,
    maximal_orbit_dim,
    move_to_first_column,
    shape_allows_swap,
    sigma_of_tableau,
    swap_entries,
    tableau_count,
    tableau_from_second_column,
    tableau_of_sigma,
    two_column_orbit_dim,
    u_move,
)


@pytest.fixture
def tableau_4578() -> TwoColumnTableau:
    return tableau_from_second_column(8, (4, 5, 7, 8))


class TestTwoColumnTableau:
    """Tests for validation of two-column tableaux."""

    def test_from_second_column(self, tableau_4578):
        assert tableau_4578.col1 == (1, 2, 3, 6)
        assert tableau_4578.shape == (4, 4)
        assert tableau_4578.k == 4
        assert tableau_4578.rows() == [(1, 4), (2, 5), (3, 7), (6, 8)]

    def test_rows_with_short_second_column(self):
        tableau = tableau_from_second_column(5, (3,))
        assert tableau.rows() == [(1, 3), (2, None), (4, None), (5, None)]

    def test_non_standard_rejected(self):
        with pytest.raises(InvalidTableauError):
            tableau_from_second_column(4, (1, 4))

    def test_second_column_too_long(self):
        with pytest.raises(InvalidTableauError):
            TwoColumnTableau(3, (1,), (2, 3))

    def test_missing_entry_rejected(self):
        with pytest.raises(InvalidTableauError):
            TwoColumnTableau(4, (1, 2), (3, 5))


class TestEnumeration:
    """Tests for counting and enumerating tableaux."""

    @pytest.mark.parametrize(
        ("n", "k", "expected"),
        [(2, 1, 1), (4, 2, 2), (6, 2, 9), (6, 3, 5), (8, 4, 14), (5, 0, 1), (7, 3, 14)],
    )
    def test_count(self, n, k, expected):
        assert tableau_count(n, k) == expected
        assert len(enumerate_tableaux(n, k)) == expected

    def test_invalid_k(self):
        with pytest.raises(ValueError):
            enumerate_tableaux(4, 3)

    def test_orbit_dims(self):
        assert two_column_orbit_dim(6, 2) == 16
        assert maximal_orbit_dim(6, 2) == 8
        with pytest.raises(ValueError):
            two_column_orbit_dim(3, 2)


class TestSigmaOfTableau:
    """Tests for the bijection between tableaux and maximal orbits."""

    def test_worked_example(self, tableau_4578):
        assert sigma_of_tableau(tableau_4578) == involution_from_arcs(8, [(3, 4), (2, 5), (6, 7), (1, 8)])

    def test_inverse(self):
        sigma = involution_from_arcs(8, [(3, 4), (2, 5), (6, 7), (1, 8)])
        assert tableau_of_sigma(sigma).col2 == (4, 5, 7, 8)

    def test_not_maximal(self, worked_sigma):
        with pytest.raises(NotMaximalError):
            tableau_of_sigma(worked_sigma)

    @pytest.mark.parametrize("n", range(1, 8))
    def test_bijection_with_maximal_orbits(self, n):
        for k in range(n // 2 + 1):
            tableaux = enumerate_tableaux(n, k)
            sigmas = {sigma_of_tableau(t) for t in tableaux}
            assert sigmas == {s for s in enumerate_involutions(n, k) if is_maximal(s)}
            for tableau in tableaux:
                sigma = sigma_of_tableau(tableau)
                assert tableau_of_sigma(sigma) == tableau
                assert dimension(sigma) == maximal_orbit_dim(n, k)


class TestClosure:
    """Tests for N(T)."""

    def test_worked_example(self, tableau_4578):
        result = closure_tableaux(tableau_4578)
        assert [t.col2 for t in result] == [(4, 5, 7)]

    def test_move_to_first_column(self, tableau_4578):
        moved = move_to_first_column(tableau_4578, 8)
        assert moved.col1 == (1, 2, 3, 6, 8)
        with pytest.raises(InvalidTableauError):
            move_to_first_column(tableau_4578, 1)

    def test_empty_second_column(self):
        with pytest.raises(ValueError):
            closure_tableaux(tableau_from_second_column(3, ()))

    @pytest.mark.parametrize("n", range(2, 9))
    def test_matches_external_arcs(self, n):
        for k in range(1, n // 2 + 1):
            for tableau in enumerate_tableaux(n, k):
                assert closure_tableaux(tableau) == closure_tableaux_via_external_arcs(tableau), tableau.col2


class TestDescentsAndMoves:
    """Tests for I(T) and u_i(T)."""

    def test_descent_set(self):
        tableau = tableau_from_second_column(9, (4, 5, 7, 8))
        assert descent_set(tableau) == {3, 6}
        assert descent_set_via_sigma(tableau) == {3, 6}

    def test_u_move_worked_example(self):
        tableau = tableau_from_second_column(6, (5, 6))
        moved = u_move(tableau, 2)
        assert moved is not None
        assert moved.col2 == (3, 5)
        assert 2 in descent_set(moved)

    def test_u_move_both_in_second_column(self):
        tableau = tableau_from_second_column(4, (3, 4))
        # σ_T = (1,4)(2,3)
        moved = u_move(tableau, 3)
        assert moved is not None
        assert moved.col2 == (2, 4)
        assert 3 in descent_set(moved)

    def test_u_move_second_then_first(self):
        tableau = tableau_from_second_column(4, (2,))
        moved = u_move(tableau, 2)
        assert moved is not None
        assert moved.col2 == (3,)

    def test_u_move_both_fixed(self):
        tableau = tableau_from_second_column(4, (2,))
        assert u_move(tableau, 3) is None

    def test_u_move_rejects_descent(self):
        tableau = tableau_from_second_column(6, (5, 6))
        with pytest.raises(DescentAtIError) as exc_info:
            u_move(tableau, 4)
        assert exc_info.value.i == 4

    def test_u_move_range(self):
        with pytest.raises(ValueError):
            u_move(tableau_from_second_column(4, (2,)), 4)

    def test_swap_entries(self):
        tableau = tableau_from_second_column(4, (2, 4))
        swapped = swap_entries(tableau, 3, 2)
        assert swapped is not None
        assert swapped.col2 == (3, 4)
        assert swap_entries(tableau, 3, 4) is None
        assert swap_entries(tableau, 1, 2) is None
        with pytest.raises(InvalidTableauError):
            swap_entries(tableau, 2, 4)

    def test_shape_check_is_only_for_u_moves(self):
        tableau = tableau_from_second_column(5, (3, 5))
        assert shape_allows_swap(tableau, 2, 5)
        assert swap_entries(tableau, 2, 5) is None

    @pytest.mark.parametrize("n", range(2, 8))
    def test_u_move_lands_in_descent_and_shape_agrees(self, n):
        for k in range(1, n // 2 + 1):
            for tableau in enumerate_tableaux(n, k):
                for i in range(1, n):
                    if i in descent_set(tableau):
                        continue
                    moved = u_move(tableau, i)
                    if moved is None:
                        continue
                    assert i in descent_set(moved)
                    first = next(p for p in moved.col2 if p not in tableau.col2)
                    second = next(p for p in tableau.col2 if p not in moved.col2)
                    assert shape_allows_swap(tableau, first, second)

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6, pytest.param(7, marks=pytest.mark.slow)])
    def test_u_move_meets_in_codim_one(self, n):
        for k in range(1, n // 2 + 1):
            for tableau in enumerate_tableaux(n, k):
                for i in range(1, n):
                    if i in descent_set(tableau):
                        continue
                    moved = u_move(tableau, i)
                    if moved is None:
                        continue
                    assert codim1_criterion(tableau, moved), (tableau.col2, i)
                    assert intersection_codim(tableau, moved) == 1, (tableau.col2, i)
