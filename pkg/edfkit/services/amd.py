"""
Exact analysis of the weak AMD tampering game.

The blocks of a family are the valid-encoding sets A_s: a source s is drawn
uniformly, encoded to a uniform g in A_s, and the adversary, who does not see
s, adds a fixed offset delta. It wins when g + delta decodes to another
source. Randomized strategies average over offsets, so the best
deterministic delta gives rho.
"""
import logging
from fractions import Fraction
from typing import Optional

import numpy as np

from edfkit.config import get_settings
from edfkit.core.errors import InvalidDelta, InvalidInput
from edfkit.core.groups import ElementLike, GroupElement
from edfkit.core.multiset import weighted_external_union
from edfkit.models.family import Family
from edfkit.schemas.reports import AmdProfile, MonteCarloResult, OptimalityClassification
from edfkit.services.bounds import improved_bound, lambda_lower_bound, ps_bound
from edfkit.services.search import SearchService
from edfkit.services.verification import classify_bswedf, family_summary

logger = logging.getLogger(__name__)


def _require_blocks(family: Family) -> None:
    if family.m < 2:
        raise InvalidInput("the tampering game needs at least two sources (m >= 2)")


def _offset(family: Family, delta: ElementLike) -> GroupElement:
    g = family.group.element(delta)
    if g.is_zero:
        raise InvalidDelta("delta = 0 is not a tampering offset")
    return g


def _game_sum(family: Family, delta: GroupElement) -> Fraction:
    """sum_s (1/m)(1/|A_s|) #{g in A_s : g + delta lands in another A_s'}."""
    owner = {g: s for s, block in enumerate(family.blocks) for g in block}
    total = Fraction(0)
    for s, block in enumerate(family.blocks):
        wins = sum(1 for g in block if owner.get(g + delta, s) != s)
        total += Fraction(wins, family.m * len(block))
    return total


def _win_table(family: Family) -> np.ndarray:
    """wins[s, d]: how many g in A_s have g + d in another block."""
    group = family.group
    offsets = group.coords_array(group.from_index(d) for d in range(family.n))
    table = np.zeros((family.m, family.n), dtype=np.int64)
    for s, block in enumerate(family.blocks):
        coords = group.coords_array(block)
        landed = family.owner[group.encode(coords[:, None, :] + offsets[None, :, :])]
        table[s] = ((landed >= 0) & (landed != s)).sum(axis=0)
    return table


def rho_delta(family: Family, delta: ElementLike) -> Fraction:
    """
    Success probability of the fixed offset delta.

    Computed from the game directly and from the weighted external union;
    the two must agree.

    Raises:
        InvalidDelta: if delta is the identity
    """
    _require_blocks(family)
    g = _offset(family, delta)
    direct = _game_sum(family, g)
    union = weighted_external_union(family)
    from_union = Fraction(union.count(g), family.k_tilde * family.m)
    if direct != from_union:
        raise RuntimeError(f"game sum {direct} and multiset form {from_union} differ at {g}")
    return direct


def rho_profile(family: Family) -> AmdProfile:
    """rho_delta for every nonzero delta, the maximum and where it is attained."""
    _require_blocks(family)
    wins = _win_table(family)
    dense = weighted_external_union(family).dense()
    denominator = family.k_tilde * family.m
    table: dict[str, Fraction] = {}
    rhos: list[Fraction] = []
    for d in range(1, family.n):
        value = sum(
            (Fraction(int(wins[s, d]), family.m * k) for s, k in enumerate(family.sizes)),
            Fraction(0),
        )
        if value != Fraction(dense[d], denominator):
            raise RuntimeError(f"game sum and multiset form differ at index {d}")
        table[str(family.group.from_index(d))] = value
        rhos.append(value)
    rho = max(rhos)
    best = [family.group.from_index(d + 1).to_json() for d, v in enumerate(rhos) if v == rho]
    lam = classify_bswedf(family, include_counts=False).lam
    return AmdProfile(
        family=family_summary(family),
        rho_by_delta=table,
        rho=rho,
        best_deltas=best,
        lam=lam,
        bridge_holds=rho * denominator == lam,
    )


def bridge_check(family: Family) -> bool:
    """rho * k~ m equals the BSWEDF lambda of the same blocks."""
    profile = rho_profile(family)
    return profile.rho * family.k_tilde * family.m == classify_bswedf(family, include_counts=False).lam


def classify_optimality(
    family: Family,
    search_budget: Optional[int] = None,
    profile: Optional[AmdProfile] = None,
) -> OptimalityClassification:
    """
    R-optimality flags for the code given by the family's blocks.

    strongly_optimal is "yes" by certificate when rho meets the improved
    bound; otherwise it is settled by exhaustive search over Z_n when the
    group is cyclic (or a coprime product) and the budget allows, and left
    "unknown" when it does not.
    """
    _require_blocks(family)
    profile = profile or rho_profile(family)
    n, m, a = family.n, family.m, family.a
    ps = ps_bound(n, m, a)
    bound = improved_bound(n, m, a)
    floor = lambda_lower_bound(n, m, family.sizes)
    swedf = bool(classify_bswedf(family, include_counts=False).is_swedf)
    if swedf != (profile.rho == ps):
        raise RuntimeError(f"SWEDF status and Paterson-Stinson optimality disagree on {family}")

    searched: Optional[Fraction] = None
    if profile.rho == bound.improved_bound:
        verdict, certificate = "yes", "bound"
    elif not (family.group.is_cyclic_presentation or family.group.is_coprime):
        verdict, certificate = "unknown", "search covers cyclic groups only"
    elif search_budget is not None and search_budget <= 0:
        verdict, certificate = "unknown", "not searched"
    else:
        result = SearchService(budget=search_budget).strongly_optimal_search(n, m, a)
        searched = result.minimal_rho
        if not result.exhausted:
            verdict, certificate = "unknown", "search budget exhausted"
        else:
            verdict = "yes" if profile.rho == searched else "no"
            certificate = "search"
    logger.info("optimality of %s: strongly_optimal=%s (%s)", family, verdict, certificate)
    return OptimalityClassification(
        ps_r_optimal=swedf,
        meets_per_k_floor=profile.lam == floor,
        strongly_optimal=verdict,
        certificate=certificate,
        ps_bound=ps,
        improved_bound=bound.improved_bound,
        lambda_floor=floor,
        searched_rho=searched,
    )


def _split(trials: int, streams: int) -> list[int]:
    base, extra = divmod(trials, streams)
    return [base + (1 if i < extra else 0) for i in range(streams)]


def monte_carlo_attack(
    family: Family,
    delta: ElementLike,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
    streams: Optional[int] = None,
) -> MonteCarloResult:
    """
    Play the game `trials` times with offset delta.

    Trials are split over independent Philox streams spawned from the seed,
    so the result depends only on (seed, streams, trials). Wins are summed
    across streams.

    Raises:
        InvalidDelta: if delta is the identity
        InvalidInput: if trials or streams are not positive
    """
    _require_blocks(family)
    settings = get_settings()
    trials = settings.mc_trials if trials is None else trials
    seed = settings.mc_seed if seed is None else seed
    streams = settings.mc_streams if streams is None else streams
    if trials < 1 or streams < 1:
        raise InvalidInput(f"trials ({trials}) and streams ({streams}) must be >= 1")
    g = _offset(family, delta)

    group = family.group
    sizes = np.array(family.sizes, dtype=np.int64)
    starts = np.concatenate(([0], np.cumsum(sizes)[:-1]))
    flat = np.concatenate(family.index_blocks)
    # block that flat[x] + delta lands in (-1 when it decodes to nothing)
    shifted = group.encode(group.coords_array(group.from_index(int(i)) for i in flat) + np.array(g.coords))
    landed = family.owner[shifted]

    wins = 0
    children = np.random.SeedSequence(seed).spawn(streams)
    for child, count in zip(children, _split(trials, streams)):
        if count == 0:
            continue
        rng = np.random.Generator(np.random.Philox(child))
        sources = rng.integers(0, family.m, size=count)
        picks = starts[sources] + rng.integers(0, sizes[sources])
        target = landed[picks]
        wins += int(((target >= 0) & (target != sources)).sum())

    exact = rho_delta(family, g)
    logger.info("monte carlo on %s, delta=%s: %d/%d wins (exact %s)", family, g, wins, trials, exact)
    return MonteCarloResult(
        delta=g.to_json(), trials=trials, seed=seed, streams=streams,
        wins=wins, rate=Fraction(wins, trials), exact=exact,
    )
