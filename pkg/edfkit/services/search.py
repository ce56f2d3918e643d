"""
Exhaustive branch-and-bound search for minimal BSWEDFs over Z_n.

Block sizes are taken non-decreasing; the first block always contains 0
(translation), and consecutive blocks of equal size appear in increasing
lexicographic order. The weighted difference counts are updated
incrementally as blocks are placed, and a branch is cut as soon as some
count reaches the incumbent lambda.
"""
import itertools
import logging
from fractions import Fraction
from typing import Optional, Sequence

from tqdm import tqdm

from edfkit.config import get_settings
from edfkit.core.errors import BudgetExceeded, InvalidInput
from edfkit.core.groups import lcm_list, make_group
from edfkit.models.family import Family
from edfkit.schemas.family import FamilyDocument
from edfkit.schemas.reports import KSearchOutcome, SearchResult
from edfkit.services.bounds import (
    improved_bound,
    lambda_lower_bound,
    partitions,
    per_k_bound,
    rho_gap_bound,
)
from edfkit.services.family_io import to_document

logger = logging.getLogger(__name__)


class _FloorReached(Exception):
    pass


class _BlockSearch:
    """One min-lambda search for a fixed (n, m, K)."""

    def __init__(self, n: int, sizes: Sequence[int], budget: int,
                 ceiling: Optional[int], floor: int, progress: bool):
        self.n = n
        self.sizes = tuple(sizes)
        self.m = len(sizes)
        k_tilde = lcm_list(sizes)
        self.weights = tuple(k_tilde // k for k in sizes)
        self.budget = budget
        self.floor = floor
        self.progress = progress
        # only families with lambda < best are accepted
        self.best = ceiling
        self.best_blocks: Optional[tuple[tuple[int, ...], ...]] = None
        self.counts = [0] * n
        self.used = [False] * n
        self.placed: list[tuple[int, ...]] = []
        self.nodes = 0

    def run(self) -> bool:
        """Search; True if the space was exhausted (or the floor attained)."""
        if self.best is not None and self.best <= self.floor:
            return True
        try:
            self._place(0)
        except _FloorReached:
            return True
        except BudgetExceeded:
            logger.debug("budget of %d nodes exhausted for K=%s", self.budget, self.sizes)
            return False
        return True

    def _candidates(self, b: int):
        k = self.sizes[b]
        if b == 0:
            for rest in itertools.combinations(range(1, self.n), k - 1):
                yield (0, *rest)
            return
        free = [x for x in range(self.n) if not self.used[x]]
        previous = self.placed[-1] if self.sizes[b - 1] == k else None
        for combo in itertools.combinations(free, k):
            if previous is not None and combo <= previous:
                continue
            yield combo

    def _apply(self, b: int, block: tuple[int, ...], sign: int) -> bool:
        """Add (sign=1) or remove (sign=-1) the differences between block b and the placed ones."""
        n, counts = self.n, self.counts
        w_new = self.weights[b]
        touched = []
        for j, other in enumerate(self.placed):
            w_old = self.weights[j]
            for x in block:
                for y in other:
                    forward, backward = (x - y) % n, (y - x) % n
                    counts[forward] += sign * w_old
                    counts[backward] += sign * w_new
                    touched.append(forward)
                    touched.append(backward)
        if sign < 0 or self.best is None:
            return True
        return all(counts[d] < self.best for d in touched)

    def _place(self, b: int) -> None:
        if b == self.m:
            lam = max(1, max(self.counts[1:]))
            if self.best is None or lam < self.best:
                self.best = lam
                self.best_blocks = tuple(self.placed)
                logger.debug("K=%s: lambda %d at node %d", self.sizes, lam, self.nodes)
                if lam <= self.floor:
                    raise _FloorReached()
            return
        candidates = self._candidates(b)
        if b == 0 and self.progress:
            candidates = tqdm(list(candidates), desc=f"K={list(self.sizes)}", leave=False)
        for block in candidates:
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExceeded(f"node budget {self.budget} exhausted")
            ok = self._apply(b, block, 1)
            if ok:
                for x in block:
                    self.used[x] = True
                self.placed.append(block)
                self._place(b + 1)
                self.placed.pop()
                for x in block:
                    self.used[x] = False
            self._apply(b, block, -1)


def _witness(n: int, blocks: tuple[tuple[int, ...], ...], note: str) -> FamilyDocument:
    return to_document(Family.from_values(make_group([n]), blocks), {"source": note})


class SearchService:
    """Ground-truth search with a node budget and optional progress bars."""

    def __init__(self, budget: Optional[int] = None, progress: Optional[bool] = None):
        settings = get_settings()
        self.budget = budget if budget is not None else settings.search_budget
        self.progress = progress if progress is not None else settings.progress

    def min_lambda_search(
        self,
        n: int,
        m: int,
        K: Sequence[int],
        budget: Optional[int] = None,
        ceiling: Optional[int] = None,
    ) -> SearchResult:
        """
        Smallest lambda of an (n, m, K)-BSWEDF over Z_n.

        Args:
            n: group order
            m: number of blocks
            K: block sizes, any order
            budget: node budget, defaults to the service budget
            ceiling: only report families with lambda strictly below this

        Returns:
            SearchResult; exhausted is False when the budget ran out, in which
            case the reported lambda is the best found so far.

        Raises:
            Infeasible: if sum K > n
        """
        if len(K) != m:
            raise InvalidInput(f"K has {len(K)} entries but m={m}")
        sizes = tuple(sorted(K))
        floor = lambda_lower_bound(n, m, sizes)
        budget = self.budget if budget is None else budget
        search = _BlockSearch(n, sizes, budget, ceiling, floor, self.progress)
        exhausted = search.run()
        stopped = search.best is not None and search.best <= floor and search.best_blocks is not None
        k_tilde = lcm_list(sizes)
        lam = search.best if search.best_blocks is not None else None
        logger.info(
            "min-lambda search (n=%d, m=%d, K=%s): lambda=%s, nodes=%d, exhausted=%s",
            n, m, list(sizes), lam, search.nodes, exhausted,
        )
        return SearchResult(
            n=n, m=m, K=list(sizes), a=sum(sizes),
            minimal_lambda=lam,
            minimal_rho=Fraction(lam, k_tilde * m) if lam is not None else None,
            lower_bound=per_k_bound(n, m, sizes),
            witness=_witness(n, search.best_blocks, f"min-lambda search K={list(sizes)}")
            if search.best_blocks is not None else None,
            nodes_explored=search.nodes,
            exhausted=exhausted,
            stopped_at_bound=stopped,
        )

    def strongly_optimal_search(
        self, n: int, m: int, a: int, budget: Optional[int] = None
    ) -> SearchResult:
        """
        rho_(n,m,a): the minimum of lambda_K / (k~ m) over every size profile K with sum a.

        Profiles are visited in lexicographic order; a profile whose floor
        cannot beat the incumbent is skipped, and later profiles only have to
        beat it strictly, so ties keep the lexicographically first K.
        """
        bound = improved_bound(n, m, a).improved_bound
        budget = self.budget if budget is None else budget
        nodes = 0
        best: Optional[Fraction] = None
        witness: Optional[FamilyDocument] = None
        best_k: Optional[list[int]] = None
        per_k: list[KSearchOutcome] = []
        exhausted = True
        stopped = False

        for K in partitions(a, m):
            if sum(K) > n:
                continue
            floor = lambda_lower_bound(n, m, K)
            k_tilde = lcm_list(K)
            if stopped or (best is not None and per_k_bound(n, m, K) >= best):
                per_k.append(KSearchOutcome(K=list(K), lambda_floor=floor, exhausted=True, skipped=True))
                continue
            ceiling = None
            if best is not None:
                # lambda / (k~ m) < best  <=>  lambda < best * k~ m
                limit = best * k_tilde * m
                ceiling = limit.numerator // limit.denominator + (0 if limit.denominator == 1 else 1)
            result = self.min_lambda_search(n, m, K, budget=max(budget - nodes, 0), ceiling=ceiling)
            nodes += result.nodes_explored
            per_k.append(KSearchOutcome(
                K=list(K), lambda_floor=floor, minimal_lambda=result.minimal_lambda,
                rho=result.minimal_rho, exhausted=result.exhausted,
            ))
            if result.minimal_rho is not None and (best is None or result.minimal_rho < best):
                best, witness, best_k = result.minimal_rho, result.witness, list(K)
            if not result.exhausted:
                exhausted = False
                break
            if best == bound:
                stopped = True

        logger.info(
            "strongly optimal search (n=%d, m=%d, a=%d): rho=%s at K=%s, nodes=%d, exhausted=%s",
            n, m, a, best, best_k, nodes, exhausted,
        )
        return SearchResult(
            n=n, m=m, a=a, K=best_k,
            minimal_rho=best,
            lower_bound=bound,
            witness=witness,
            nodes_explored=nodes,
            exhausted=exhausted,
            stopped_at_bound=stopped,
            per_k=per_k,
        )

    def rho_gap(self, n: int, m: int, K: Sequence[int], budget: Optional[int] = None) -> dict:
        """
        Searched rho_(n,m,K) - rho_(n,m,a) next to its 1/(k~ m) ceiling.

        The ceiling is only guaranteed when the optimum for K meets its floor.
        """
        per = self.min_lambda_search(n, m, K, budget=budget)
        overall = self.strongly_optimal_search(n, m, sum(K), budget=budget)
        gap = None
        if per.minimal_rho is not None and overall.minimal_rho is not None:
            gap = per.minimal_rho - overall.minimal_rho
        return {
            "K": list(per.K),
            "rho_K": per.minimal_rho,
            "rho_a": overall.minimal_rho,
            "gap": gap,
            "ceiling": rho_gap_bound(n, m, K),
            "meets_floor": per.minimal_lambda == lambda_lower_bound(n, m, K),
            "exhausted": per.exhausted and overall.exhausted,
        }


_search_service: Optional[SearchService] = None


def get_search_service() -> SearchService:
    """Get or create the search service singleton."""
    global _search_service
    if _search_service is None:
        _search_service = SearchService()
    return _search_service


def min_lambda_search(n: int, m: int, K: Sequence[int], budget: Optional[int] = None) -> SearchResult:
    return get_search_service().min_lambda_search(n, m, K, budget=budget)


def strongly_optimal_search(n: int, m: int, a: int, budget: Optional[int] = None) -> SearchResult:
    return get_search_service().strongly_optimal_search(n, m, a, budget=budget)
