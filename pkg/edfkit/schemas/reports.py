"""
Pydantic schemas for machine-readable classification reports.

Rationals are exact and serialize as "p/q" strings.
"""
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from edfkit.schemas.common import ElementJson, Rational
from edfkit.schemas.family import FamilyDocument, FamilySummary

TriState = Literal["yes", "no", "unknown"]


class ReportModel(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, populate_by_name=True)

    def to_json(self, **kwargs) -> str:
        return self.model_dump_json(by_alias=True, exclude_none=True, **kwargs)


class Witness(ReportModel):
    """A difference pinpointing an extremal or violating count."""

    element: ElementJson = Field(..., description="The difference delta")
    count: int = Field(..., description="Observed count at delta")
    block: Optional[int] = Field(None, description="1-based block number, for per-block tests")
    expected: Optional[str] = Field(None, description="What the property required")


class PedfBucket(ReportModel):
    """One size class of a partitioned external difference family."""

    w: int = Field(..., description="Block size of this class")
    c: int = Field(..., description="Number of blocks of this size")
    lam: Optional[int] = Field(None, alias="lambda")
    holds: bool


class VerificationReport(ReportModel):
    """Outcome of one verifier from the external-difference taxonomy."""

    kind: str = Field(..., description="Property tested, e.g. 'bswedf'")
    holds: bool
    reason: Optional[str] = Field(None, description="Why the property fails, when it does")
    family: FamilySummary
    lam: Optional[int] = Field(None, alias="lambda")
    lambdas: Optional[list[int]] = Field(None, description="Per-block lambda_i vector")
    target: Optional[list[int]] = Field(None, description="Bounds supplied to a bounded verifier")
    minimal: Optional[list[int]] = Field(None, description="Minimal feasible bounds (max counts)")
    buckets: Optional[list[PedfBucket]] = None
    is_swedf: Optional[bool] = None
    d: Optional[Rational] = Field(None, description="Reciprocally weighted index")
    violations: Optional[int] = Field(None, description="Number of violating (block, delta) pairs")
    witness: Optional[Witness] = None
    violators: Optional[list[Witness]] = Field(
        None, description="Every violating (block, delta, count), ordered by delta then block"
    )
    counts: Optional[dict[str, int]] = Field(None, description="Per-delta count table")
    n_table: Optional[list[dict[str, int]]] = Field(None, description="N_i(delta) per block")

    class Config:
        json_schema_extra = {
            "example": {
                "kind": "bswedf",
                "holds": True,
                "family": {"factors": [10], "n": 10, "m": 3, "K": [1, 1, 3], "sorted_K": [1, 1, 3], "a": 5,
                           "k_tilde": 3, "disjoint": True, "is_partition": False},
                "lambda": 4,
                "is_swedf": False,
                "witness": {"element": 1, "count": 4},
            }
        }


class BoundReport(ReportModel):
    """Closed-form lower bounds for weak AMD codes with parameters (n, m, a)."""

    n: int
    m: int
    a: int
    K: Optional[list[int]] = Field(None, description="Concrete size profile, when supplied")
    ps_bound: Rational = Field(..., description="a(m-1)/(m(n-1))")
    per_k_bound: Optional[Rational] = Field(None, description="ceil(k~a(m-1)/(n-1))/(k~m) for K")
    improved_bound: Rational = Field(..., description="Minimum of the per-K bound over partitions")
    argmin: list[int] = Field(..., description="Lexicographically smallest minimizing partition")
    lambda_floor: int = Field(..., description="Lambda floor for K, or for argmin when K is absent")
    divisible: bool = Field(..., description="(n-1) | k~a(m-1) for K, or for argmin")
    rho_gap_ceiling: Rational = Field(..., description="1/(k~m) for K, or for argmin")
    strict_improvement: bool
    partitions_considered: int
    partitions_excluded: int = Field(0, description="Partitions dropped because sum K > n")
    notes: list[str] = Field(default_factory=list)


class OptimalityClassification(ReportModel):
    ps_r_optimal: bool = Field(..., description="rho meets the Paterson-Stinson bound")
    meets_per_k_floor: bool = Field(..., description="lambda equals ceil(k~a(m-1)/(n-1))")
    strongly_optimal: TriState
    certificate: str = Field(..., description="How strongly_optimal was decided")
    ps_bound: Rational
    improved_bound: Rational
    lambda_floor: int
    searched_rho: Optional[Rational] = Field(None, description="rho_(n,m,a) found by search")


class MonteCarloResult(ReportModel):
    delta: ElementJson
    trials: int
    seed: int
    streams: int
    wins: int
    rate: Rational
    exact: Rational


class AmdProfile(ReportModel):
    """Exact analysis of the weak AMD code whose encoding sets are the blocks."""

    family: FamilySummary
    rho_by_delta: dict[str, Rational]
    rho: Rational
    best_deltas: list[ElementJson]
    lam: int = Field(..., alias="lambda", description="BSWEDF lambda = rho * k~ * m")
    bridge_holds: bool
    classification: Optional[OptimalityClassification] = None
    monte_carlo: Optional[MonteCarloResult] = None

    class Config:
        json_schema_extra = {
            "example": {
                "family": {"factors": [10], "n": 10, "m": 3, "K": [1, 1, 3], "sorted_K": [1, 1, 3], "a": 5,
                           "k_tilde": 3, "disjoint": True, "is_partition": False},
                "rho": "4/9",
                "best_deltas": [1, 2, 5, 8, 9],
                "lambda": 4,
                "bridge_holds": True,
            }
        }


class KSearchOutcome(ReportModel):
    K: list[int]
    lambda_floor: int
    minimal_lambda: Optional[int] = None
    rho: Optional[Rational] = None
    exhausted: bool
    skipped: bool = Field(False, description="Floor could not beat the incumbent")


class SearchResult(ReportModel):
    """Ground truth from exhaustive search over cyclic groups."""

    n: int
    m: int
    K: Optional[list[int]] = None
    a: int
    minimal_lambda: Optional[int] = None
    minimal_rho: Optional[Rational] = None
    lower_bound: Rational = Field(..., description="Closed-form bound the search is compared with")
    witness: Optional[FamilyDocument] = None
    nodes_explored: int
    exhausted: bool
    stopped_at_bound: bool = Field(False, description="Search ended because the floor was attained")
    per_k: Optional[list[KSearchOutcome]] = None


class PredictedParameters(ReportModel):
    n: int
    m: int
    K: list[int]
    a: int
    lam: int = Field(..., alias="lambda")
    d: Optional[Rational] = None


class ConstructionResult(ReportModel):
    """A construction's family with the theorem prediction and its re-verification."""

    construction: str
    parameters: dict[str, int]
    family: FamilyDocument
    flattened: Optional[FamilyDocument] = None
    predicted: PredictedParameters
    verified: VerificationReport
    lambda_floor: int
    optimal_certificate: bool
    rwedf: Optional[VerificationReport] = None
    bimodal: Optional[VerificationReport] = None
    taxonomy: Optional[dict[str, bool]] = Field(
        None, description="EDF/GSEDF/PEDF outcomes on the output"
    )
