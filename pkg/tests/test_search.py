from fractions import Fraction

import pytest

from edfkit.core.errors import Infeasible, InvalidInput
from edfkit.services.family_io import family_from_document
from edfkit.services.search import SearchService, min_lambda_search, strongly_optimal_search
from edfkit.services.verification import classify_bswedf, implication_checks


@pytest.mark.parametrize("n, m, K, expected", [
    (10, 3, [1, 2, 2], 3),
    (10, 3, [1, 1, 3], 4),
    (10, 3, [3, 1, 1], 4),
    (3, 2, [1, 1], 1),
])
def test_min_lambda(n, m, K, expected):
    result = min_lambda_search(n, m, K)
    assert result.minimal_lambda == expected
    assert result.exhausted
    assert result.K == sorted(K)


def test_witness_is_a_family_with_the_reported_lambda():
    result = min_lambda_search(10, 3, [1, 2, 2])
    witness = family_from_document(result.witness)
    assert witness.sizes == (1, 2, 2)
    assert 0 in [g.coords[0] for g in witness.blocks[0]]
    assert classify_bswedf(witness).lam == 3


def test_search_stops_at_the_floor():
    result = min_lambda_search(10, 3, [1, 1, 3])
    assert result.stopped_at_bound
    assert result.lower_bound == Fraction(4, 9)


def test_ceiling_rejects_everything_at_or_above_it():
    result = SearchService().min_lambda_search(10, 3, [1, 2, 2], ceiling=3)
    assert result.minimal_lambda is None
    assert result.witness is None
    assert result.exhausted


def test_budget_truncation():
    result = SearchService(budget=2).min_lambda_search(10, 3, [1, 2, 2])
    assert not result.exhausted
    assert result.nodes_explored <= 3


def test_infeasible_profile():
    with pytest.raises(Infeasible):
        min_lambda_search(4, 2, [2, 3])
    with pytest.raises(InvalidInput):
        min_lambda_search(10, 3, [1, 2])


def test_strongly_optimal_z10():
    result = strongly_optimal_search(10, 3, 5)
    assert result.minimal_rho == Fraction(4, 9)
    assert result.K == [1, 1, 3]
    assert result.exhausted
    assert result.stopped_at_bound
    assert [k.K for k in result.per_k] == [[1, 1, 3], [1, 2, 2]]
    assert result.per_k[1].skipped


def test_strongly_optimal_z12_is_not_below_the_improved_bound():
    result = strongly_optimal_search(12, 3, 5)
    assert result.exhausted
    assert result.minimal_rho >= Fraction(1, 3)
    assert result.lower_bound == Fraction(1, 3)


@pytest.mark.parametrize("n", [3, 5, 8])
def test_two_singletons(n):
    result = strongly_optimal_search(n, 2, 2)
    assert result.minimal_rho == Fraction(1, 2)


def test_rho_gap():
    gap = SearchService().rho_gap(10, 3, [1, 2, 2])
    assert gap["rho_K"] == Fraction(1, 2)
    assert gap["rho_a"] == Fraction(4, 9)
    assert gap["gap"] == Fraction(1, 18)
    assert gap["ceiling"] == Fraction(1, 6)
    assert gap["meets_floor"]
    assert gap["gap"] <= gap["ceiling"]


def test_budget_from_settings(monkeypatch):
    from edfkit.config import get_settings

    monkeypatch.setenv("EDFKIT_SEARCH_BUDGET", "1")
    get_settings.cache_clear()
    assert SearchService().budget == 1
    assert not SearchService().min_lambda_search(10, 3, [1, 2, 2]).exhausted


def test_implications_hold_on_search_witnesses():
    for K in ([1, 1, 3], [1, 2, 2]):
        witness = family_from_document(min_lambda_search(10, 3, K).witness)
        assert all(implication_checks(witness).values())
