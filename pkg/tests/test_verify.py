"""Tests for core.verify module."""

import pytest

from core.patterns import dim_via_pattern
from core.verify import (
    CheckResult,
    check_closure,
    check_codim_one,
    check_cover_codimension,
    check_cover_maximality,
    check_dim_equivalence,
    check_intersections,
    check_involution_count,
    check_meander_oracles,
    check_n_matrix,
    check_projection,
    check_rank2_exactness,
    check_reducibility,
    check_sigma_bar,
    check_tableaux,
    check_u_moves,
    default_checks,
    run_verification,
)


def _mutant_dim(sigma):
    return dim_via_pattern(sigma) + (1 if sigma.length == 2 else 0)


class TestCheckResult:
    def test_record(self):
        result = CheckResult("demo", 3)
        result.record(True, lambda: "unused")
        result.record(False, lambda: "first")
        assert result.cases == 2
        assert result.failures == 1
        assert result.examples == ["first"]
        assert not result.passed

    def test_examples_are_capped(self):
        result = CheckResult("demo", 3)
        for idx in range(10):
            result.record(False, lambda idx=idx: str(idx))
        assert result.failures == 10
        assert len(result.examples) == 5


@pytest.mark.parametrize(
    "check",
    [
        check_dim_equivalence,
        check_involution_count,
        check_n_matrix,
        check_rank2_exactness,
        check_closure,
        check_cover_codimension,
        check_cover_maximality,
        check_sigma_bar,
        check_tableaux,
        check_codim_one,
        check_reducibility,
        check_projection,
        check_intersections,
        check_meander_oracles,
        check_u_moves,
    ],
)
def test_checks_pass_for_n4(check):
    result = check(4)
    assert result.passed, result.examples
    assert result.n == 4


def test_mutant_dimension_is_caught():
    result = check_dim_equivalence(4, dim_pattern=_mutant_dim)
    assert not result.passed
    # n=4 has 3 involutions of length 2
    assert result.failures == 3
    assert result.examples


def test_run_verification_n1_passes():
    report = run_verification(1, 1)
    assert report.passed
    assert {r.name for r in report.results} == set(default_checks())


def test_run_verification_skips_rank2_above_limit():
    report = run_verification(1, 3, config={"rank2_exhaustive_max_n": 2})
    rank2 = [r.n for r in report.results if r.name == "rank2_exactness"]
    assert rank2 == [1, 2]


def test_run_verification_reports_mutant():
    report = run_verification(1, 4, dim_pattern=_mutant_dim)
    assert not report.passed
    failing = {(r.name, r.n) for r in report.results if not r.passed}
    assert failing == {("dim_equivalence", 4)}


def test_custom_checks():
    report = run_verification(2, 3, checks={"count": check_involution_count})
    assert [(r.name, r.n) for r in report.results] == [("involution_count", 2), ("involution_count", 3)]


def test_report_frame_and_dict():
    report = run_verification(1, 2, checks={"count": check_involution_count})
    frame = report.to_frame()
    assert list(frame.columns) == ["check", "n", "cases", "failures", "status"]
    assert list(frame["status"]) == ["ok", "ok"]
    data = report.to_dict()
    assert data["passed"] is True
    assert data["n_min"] == 1
    assert len(data["checks"]) == 2


@pytest.mark.slow
def test_full_verification_up_to_6():
    report = run_verification(1, 6, config={"rank2_exhaustive_max_n": 4})
    assert report.passed, [(r.name, r.n, r.examples) for r in report.results if not r.passed]


@pytest.mark.slow
@pytest.mark.parametrize(
    ("check", "n"),
    [
        (check_rank2_exactness, 5),
        (check_closure, 7),
        (check_cover_codimension, 7),
        (check_cover_maximality, 7),
        (check_sigma_bar, 7),
        (check_tableaux, 8),
        (check_tableaux, 9),
        (check_codim_one, 8),
        (check_reducibility, 8),
        (check_projection, 7),
        (check_intersections, 7),
        (check_meander_oracles, 7),
        (check_u_moves, 7),
    ],
    ids=lambda value: getattr(value, "__name__", str(value)),
)
def test_checks_pass_at_acceptance_bounds(check, n):
    """Test that each exhaustive check holds at the largest n it is required for."""
    result = check(n)
    assert result.passed, result.examples
    assert result.cases > 0


def test_intersection_structure_catches_empty_intersections(monkeypatch):
    """Test that an intersect returning no components is reported."""
    from core.meanders import IntersectionReport, intersection_matrix

    def empty_intersect(a, b, restrict_k=None, *, cap=12):
        return IntersectionReport(a=a, b=b, restrict_k=restrict_k, min_matrix=intersection_matrix(a, b), components=())

    monkeypatch.setattr("core.verify.intersect", empty_intersect)
    result = check_intersections(4)
    assert not result.passed
    assert result.failures > 0
