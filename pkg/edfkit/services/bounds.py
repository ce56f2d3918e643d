"""
Closed-form lower bounds for weak AMD codes and BSWEDFs.

All results are exact: integers for lambda floors, Fractions for rho bounds.
"""
import logging
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from sympy.utilities.iterables import ordered_partitions

from edfkit.config import get_settings
from edfkit.core.errors import Infeasible, InvalidInput
from edfkit.core.groups import lcm_list
from edfkit.schemas.reports import BoundReport

logger = logging.getLogger(__name__)


def _check_profile(n: int, m: int, K: Sequence[int]) -> None:
    if n < 2:
        raise InvalidInput(f"group order n={n} must be >= 2")
    if m < 2:
        raise InvalidInput(f"m={m} must be >= 2")
    if len(K) != m:
        raise InvalidInput(f"K has {len(K)} entries but m={m}")
    if any(k < 1 for k in K):
        raise InvalidInput(f"block sizes must be >= 1, got {list(K)}")
    if sum(K) > n:
        raise Infeasible(f"sum K = {sum(K)} exceeds n = {n}; blocks cannot be disjoint")


def _check_nma(n: int, m: int, a: int) -> None:
    if n < 2:
        raise InvalidInput(f"group order n={n} must be >= 2")
    if m < 2:
        raise InvalidInput(f"m={m} must be >= 2")
    if not m <= a <= n:
        raise Infeasible(f"need m <= a <= n, got m={m}, a={a}, n={n}")


def weighted_total(n: int, m: int, K: Sequence[int]) -> int:
    """k_tilde * a * (m - 1): the size of the weighted external union."""
    return lcm_list(K) * sum(K) * (m - 1)


def lambda_lower_bound(n: int, m: int, K: Sequence[int]) -> int:
    """ceil(k_tilde * a * (m - 1) / (n - 1))."""
    _check_profile(n, m, K)
    return -(-weighted_total(n, m, K) // (n - 1))


def swedf_divisibility(n: int, m: int, K: Sequence[int]) -> bool:
    """(n - 1) | k_tilde * a * (m - 1); necessary for an SWEDF (and an RWEDF)."""
    _check_profile(n, m, K)
    return weighted_total(n, m, K) % (n - 1) == 0


def ps_bound(n: int, m: int, a: int) -> Fraction:
    """Paterson-Stinson bound a(m-1) / (m(n-1))."""
    _check_nma(n, m, a)
    return Fraction(a * (m - 1), m * (n - 1))


def per_k_bound(n: int, m: int, K: Sequence[int]) -> Fraction:
    return Fraction(lambda_lower_bound(n, m, K), lcm_list(K) * m)


def rho_gap_bound(n: int, m: int, K: Sequence[int]) -> Fraction:
    """Ceiling 1/(k_tilde m) on rho_(n,m,K) - rho_(n,m,a) for optimal BSWEDFs meeting the floor."""
    _check_profile(n, m, K)
    return Fraction(1, lcm_list(K) * m)


def partitions(a: int, m: int, cap: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """
    Every multiset of m positive integers summing to a, as non-decreasing tuples
    in lexicographic order.

    Raises:
        Infeasible: if m > a
        InvalidInput: if a exceeds the partition cap
    """
    if m < 1:
        raise InvalidInput(f"m={m} must be >= 1")
    if m > a:
        raise Infeasible(f"cannot split a={a} into m={m} positive parts")
    if cap is None:
        cap = get_settings().partition_cap
    if a > cap:
        raise InvalidInput(
            f"a={a} exceeds the partition cap {cap}; raise EDFKIT_PARTITION_CAP or pass --allow-large"
        )
    for parts in ordered_partitions(a, m, sort=True):
        yield tuple(parts)


def improved_bound(
    n: int,
    m: int,
    a: int,
    K: Optional[Sequence[int]] = None,
    cap: Optional[int] = None,
) -> BoundReport:
    """
    Minimum over size profiles K (sum K = a) of ceil(k~a(m-1)/(n-1)) / (k~m).

    Ties go to the lexicographically smallest non-decreasing K. When K is
    supplied its own per-K bound, floor and divisibility are reported too.
    """
    _check_nma(n, m, a)
    if K is not None:
        _check_profile(n, m, K)
        if sum(K) != a:
            raise InvalidInput(f"sum K = {sum(K)} differs from a = {a}")

    best: Optional[Fraction] = None
    argmin: Optional[tuple[int, ...]] = None
    considered = excluded = 0
    for candidate in partitions(a, m, cap=cap):
        if sum(candidate) > n:
            excluded += 1
            continue
        considered += 1
        value = per_k_bound(n, m, candidate)
        if best is None or value < best or (value == best and candidate < argmin):
            best, argmin = value, candidate
    if best is None:
        raise Infeasible(f"no size profile with sum {a} fits in n={n}")

    ps = ps_bound(n, m, a)
    focus = tuple(K) if K is not None else argmin
    notes = []
    if excluded:
        notes.append(f"{excluded} partitions with sum K > n were excluded")
    if best == ps:
        notes.append("improved bound coincides with the Paterson-Stinson bound")
    logger.info("improved bound for (n=%d, m=%d, a=%d): %s at K=%s", n, m, a, best, argmin)
    return BoundReport(
        n=n, m=m, a=a,
        K=list(K) if K is not None else None,
        ps_bound=ps,
        per_k_bound=per_k_bound(n, m, K) if K is not None else None,
        improved_bound=best,
        argmin=list(argmin),
        lambda_floor=lambda_lower_bound(n, m, focus),
        divisible=swedf_divisibility(n, m, focus),
        rho_gap_ceiling=rho_gap_bound(n, m, focus),
        strict_improvement=best > ps,
        partitions_considered=considered,
        partitions_excluded=excluded,
        notes=notes,
    )
