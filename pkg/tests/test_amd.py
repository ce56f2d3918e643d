import math
import random
from fractions import Fraction

import pytest

from edfkit.core.errors import InvalidDelta, InvalidInput
from edfkit.core.groups import make_group
from edfkit.models.family import Family
from edfkit.services.amd import (
    bridge_check,
    classify_optimality,
    monte_carlo_attack,
    rho_delta,
    rho_profile,
)
from edfkit.services.constructions import construct_b
from edfkit.services.family_io import family_from_document


def random_family(rng: random.Random) -> Family:
    n = rng.randint(3, 30)
    m = rng.randint(2, min(5, n))
    a = rng.randint(m, n)
    elements = rng.sample(range(n), a)
    cuts = sorted(rng.sample(range(1, a), m - 1))
    bounds = [0, *cuts, a]
    return Family.from_values(
        make_group([n]), [elements[lo:hi] for lo, hi in zip(bounds, bounds[1:])]
    )


def test_rho_profile_z10(z10_amd):
    profile = rho_profile(z10_amd)
    assert profile.rho == Fraction(4, 9)
    assert profile.lam == 4
    assert profile.best_deltas == [1, 2, 5, 8, 9]
    assert profile.rho_by_delta["6"] == Fraction(1, 9)
    assert profile.rho_by_delta["3"] == Fraction(1, 3)
    assert profile.bridge_holds


def test_rho_delta_game_sum(z10_amd):
    # (1/3)(1/1)(1) + (1/3)(1/3)(1): source {5} always escapes, {0,4,6} once
    assert rho_delta(z10_amd, 1) == Fraction(1, 3) + Fraction(1, 9)
    assert rho_delta(z10_amd, 6) == Fraction(1, 9)


def test_zero_offset_rejected(z10_amd):
    with pytest.raises(InvalidDelta):
        rho_delta(z10_amd, 0)
    with pytest.raises(InvalidDelta):
        monte_carlo_attack(z10_amd, 10, trials=10, seed=1)


def test_single_source_rejected():
    with pytest.raises(InvalidInput):
        rho_profile(Family.from_values(make_group([5]), [[0, 1]]))


@pytest.mark.slow
def test_bridge_on_random_families():
    rng = random.Random(20240611)
    for _ in range(1000):
        assert bridge_check(random_family(rng))


def test_swedf_is_ps_optimal(z10_swedf):
    result = classify_optimality(z10_swedf)
    assert result.ps_r_optimal
    assert result.strongly_optimal == "yes"
    assert result.certificate == "bound"
    assert result.ps_bound == Fraction(1, 2)


def test_strongly_optimal_by_bound(z10_amd):
    result = classify_optimality(z10_amd, search_budget=0)
    assert not result.ps_r_optimal
    assert result.meets_per_k_floor
    assert result.strongly_optimal == "yes"
    assert result.certificate == "bound"


def test_not_strongly_optimal_by_search(z10_k122):
    result = classify_optimality(z10_k122)
    assert result.meets_per_k_floor
    assert result.strongly_optimal == "no"
    assert result.certificate == "search"
    assert result.searched_rho == Fraction(4, 9)


def test_unsearched_is_unknown(z10_k122):
    result = classify_optimality(z10_k122, search_budget=0)
    assert result.strongly_optimal == "unknown"
    assert result.certificate == "not searched"


def test_tiny_budget_is_unknown(z10_k122):
    result = classify_optimality(z10_k122, search_budget=3)
    assert result.strongly_optimal == "unknown"
    assert result.certificate == "search budget exhausted"


def test_monte_carlo_is_reproducible(z10_amd):
    first = monte_carlo_attack(z10_amd, 1, trials=5000, seed=7, streams=4)
    second = monte_carlo_attack(z10_amd, 1, trials=5000, seed=7, streams=4)
    assert first.wins == second.wins
    assert first.exact == Fraction(4, 9)
    assert first.rate == Fraction(first.wins, 5000)


def test_monte_carlo_with_more_streams_than_trials(z10_amd):
    result = monte_carlo_attack(z10_amd, 1, trials=3, seed=0, streams=8)
    assert 0 <= result.wins <= 3


def within_five_sigma(wins: int, trials: int, p: Fraction) -> bool:
    sigma = math.sqrt(trials * float(p) * (1 - float(p)))
    return abs(wins - trials * float(p)) <= 5 * sigma


@pytest.mark.slow
def test_monte_carlo_matches_exact_rho_z10(z10_amd):
    result = monte_carlo_attack(z10_amd, 1, trials=1_000_000, seed=2024)
    assert within_five_sigma(result.wins, result.trials, Fraction(4, 9))


@pytest.mark.slow
def test_monte_carlo_matches_exact_rho_construction_b():
    family = family_from_document(construct_b(11).family)
    profile = rho_profile(family)
    best = family.group.element(profile.best_deltas[0])
    result = monte_carlo_attack(family, best, trials=1_000_000, seed=11)
    assert result.exact == profile.rho
    assert within_five_sigma(result.wins, result.trials, profile.rho)
