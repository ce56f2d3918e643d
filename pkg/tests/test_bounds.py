from fractions import Fraction

import pytest

from edfkit.core.errors import Infeasible, InvalidInput
from edfkit.services.bounds import (
    improved_bound,
    lambda_lower_bound,
    partitions,
    per_k_bound,
    ps_bound,
    rho_gap_bound,
    swedf_divisibility,
)


def test_lambda_floor():
    assert lambda_lower_bound(10, 3, [1, 1, 3]) == 4
    assert lambda_lower_bound(10, 3, [1, 2, 2]) == 3
    assert lambda_lower_bound(10, 4, [1, 1, 2, 2]) == 4


def test_divisibility():
    assert swedf_divisibility(10, 4, [1, 1, 2, 2])
    assert not swedf_divisibility(10, 3, [1, 1, 3])


def test_ps_bound():
    assert ps_bound(10, 3, 5) == Fraction(10, 27)
    assert ps_bound(10, 4, 6) == Fraction(1, 2)


def test_per_k_bound_and_gap_ceiling():
    assert per_k_bound(10, 3, [1, 1, 3]) == Fraction(4, 9)
    assert per_k_bound(10, 3, [1, 2, 2]) == Fraction(1, 2)
    assert rho_gap_bound(10, 3, [1, 2, 2]) == Fraction(1, 6)


def test_partitions_in_lexicographic_order():
    assert list(partitions(5, 3)) == [(1, 1, 3), (1, 2, 2)]
    assert list(partitions(6, 4)) == [(1, 1, 1, 3), (1, 1, 2, 2)]
    with pytest.raises(Infeasible):
        list(partitions(2, 3))


def test_partition_cap(monkeypatch):
    from edfkit.config import get_settings

    monkeypatch.setenv("EDFKIT_PARTITION_CAP", "4")
    get_settings.cache_clear()
    with pytest.raises(InvalidInput, match="partition cap"):
        list(partitions(5, 3))
    assert len(list(partitions(5, 3, cap=5))) == 2


def test_improved_bound_z10():
    report = improved_bound(10, 3, 5)
    assert report.improved_bound == Fraction(4, 9)
    assert report.argmin == [1, 1, 3]
    assert report.ps_bound == Fraction(10, 27)
    assert report.strict_improvement
    assert report.lambda_floor == 4
    assert report.partitions_considered == 2


def test_improved_bound_tie_keeps_first_profile():
    report = improved_bound(12, 3, 5)
    assert report.improved_bound == Fraction(1, 3)
    assert report.argmin == [1, 1, 3]
    assert report.ps_bound == Fraction(10, 33)


def test_improved_bound_meets_ps_when_divisible():
    report = improved_bound(10, 4, 6)
    assert report.improved_bound == report.ps_bound == Fraction(1, 2)
    assert not report.strict_improvement


def test_improved_bound_with_explicit_profile():
    report = improved_bound(10, 3, 5, K=[1, 2, 2])
    assert report.per_k_bound == Fraction(1, 2)
    assert report.lambda_floor == 3
    assert report.rho_gap_ceiling == Fraction(1, 6)
    with pytest.raises(InvalidInput):
        improved_bound(10, 3, 6, K=[1, 2, 2])


def test_bound_report_serializes_rationals():
    payload = improved_bound(10, 3, 5).to_json()
    assert '"improved_bound":"4/9"' in payload


@pytest.mark.parametrize("n, m, a", [(10, 1, 5), (1, 2, 2)])
def test_invalid_parameters(n, m, a):
    with pytest.raises(InvalidInput):
        ps_bound(n, m, a)


def test_infeasible_parameters():
    with pytest.raises(Infeasible):
        ps_bound(4, 2, 5)
    with pytest.raises(Infeasible):
        lambda_lower_bound(4, 2, [2, 3])


def partition_count(a: int, m: int) -> int:
    """p(a, m) = p(a-1, m-1) + p(a-m, m): either a part equals 1 or every part shrinks by 1."""
    if a == 0 and m == 0:
        return 1
    if a < m or m == 0:
        return 0
    return partition_count(a - 1, m - 1) + partition_count(a - m, m)


@pytest.mark.parametrize("a", range(2, 19))
def test_partition_count_matches_recurrence(a):
    for m in range(2, a + 1):
        found = list(partitions(a, m))
        assert len(found) == partition_count(a, m)
        assert len(set(found)) == len(found)
        assert all(sum(p) == a and len(p) == m and min(p) >= 1 for p in found)
        assert found == sorted(found)
