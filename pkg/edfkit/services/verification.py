"""
Verifiers for the external-difference taxonomy.

Every verifier returns a VerificationReport; a property that fails is a
result, not an error. Witnesses are the lexicographically smallest
extremal or violating difference.
"""
import logging
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from edfkit.core.errors import InvalidInput
from edfkit.core.multiset import (
    DiffMultiset,
    incoming_counts,
    internal_diffs,
    outgoing_counts,
    weighted_external_union,
)
from edfkit.models.family import Family
from edfkit.schemas.family import FamilySummary
from edfkit.schemas.reports import PedfBucket, VerificationReport, Witness

logger = logging.getLogger(__name__)

M_TOO_SMALL = "m<2"


def family_summary(family: Family) -> FamilySummary:
    return FamilySummary(
        factors=list(family.group.factors),
        n=family.n,
        m=family.m,
        K=list(family.sizes),
        sorted_K=sorted(family.sizes),
        a=family.a,
        k_tilde=family.k_tilde,
        disjoint=family.is_disjoint,
        is_partition=family.is_partition,
    )


def _nonzero_extremes(family: Family, dense: Sequence[int]) -> tuple[int, int, int, int]:
    """(lo, hi, argmin index, argmax index) over nonzero elements."""
    values = np.asarray(dense, dtype=object)[1:]
    lo_at = int(np.argmin(values)) + 1
    hi_at = int(np.argmax(values)) + 1
    return int(dense[lo_at]), int(dense[hi_at]), lo_at, hi_at


def _witness(family: Family, index: int, count: int, block: Optional[int] = None,
             expected: Optional[str] = None) -> Witness:
    return Witness(
        element=family.group.from_index(index).to_json(),
        count=count,
        block=block,
        expected=expected,
    )


def _too_small(kind: str, family: Family) -> VerificationReport:
    return VerificationReport(
        kind=kind, holds=False, reason=M_TOO_SMALL, family=family_summary(family)
    )


def _constant_report(kind: str, family: Family, dense: Sequence[int]) -> VerificationReport:
    lo, hi, lo_at, hi_at = _nonzero_extremes(family, dense)
    if lo == hi:
        return VerificationReport(
            kind=kind, holds=True, family=family_summary(family), lam=hi,
            minimal=[hi], witness=_witness(family, hi_at, hi),
        )
    return VerificationReport(
        kind=kind, holds=False, reason="counts are not constant on G\\{0}",
        family=family_summary(family), minimal=[hi],
        witness=_witness(family, lo_at, lo, expected=str(hi)),
    )


def _internal_union(family: Family) -> DiffMultiset:
    total = DiffMultiset(family.group)
    for block in family.blocks:
        total = total + internal_diffs(block, family.group)
    return total


def verify_df(family: Family) -> VerificationReport:
    """
    Union of the internal differences D(B_i) is constant lambda >= 1 on G\\{0}.

    Blocks with no internal differences at all (only singletons) do not form
    a difference family.
    """
    total = _internal_union(family)
    if total.total == 0:
        return VerificationReport(
            kind="df", holds=False, reason="blocks have no internal differences",
            family=family_summary(family), minimal=[0],
        )
    return _constant_report("df", family, total.dense())


def verify_pdf(family: Family) -> VerificationReport:
    """
    Blocks partition G and their internal differences are constant.

    The partition into singletons passes with lambda 0; it is the PDF of Z_3
    that construction b starts from.
    """
    if not family.is_partition:
        missing = family.missing_elements()[0]
        return VerificationReport(
            kind="pdf", holds=False, reason="blocks do not cover the group",
            family=family_summary(family),
            witness=Witness(element=missing.to_json(), count=0, expected="covered"),
        )
    return _constant_report("pdf", family, _internal_union(family).dense())


def verify_edf(family: Family) -> VerificationReport:
    if family.m < 2:
        return _too_small("edf", family)
    dense = np.sum(outgoing_counts(family), axis=0)
    return _constant_report("edf", family, dense.tolist())


def verify_bedf(family: Family, lam: int) -> VerificationReport:
    """Every nonzero difference appears at most lam times; reports the minimal lam."""
    if family.m < 2:
        return _too_small("bedf", family)
    dense = np.sum(outgoing_counts(family), axis=0).tolist()
    _, hi, _, hi_at = _nonzero_extremes(family, dense)
    holds = hi <= lam
    return VerificationReport(
        kind="bedf", holds=holds,
        reason=None if holds else f"max count {hi} exceeds {lam}",
        family=family_summary(family), lam=lam, target=[lam], minimal=[hi],
        witness=_witness(family, hi_at, hi, expected=f"<= {lam}"),
    )


def _per_block(family: Family) -> list[tuple[int, int, int, int]]:
    return [_nonzero_extremes(family, c.tolist()) for c in outgoing_counts(family)]


def verify_gsedf(family: Family) -> VerificationReport:
    """Each per-block union over j != i of D(B_i, B_j) is constant lambda_i."""
    if family.m < 2:
        return _too_small("gsedf", family)
    extremes = _per_block(family)
    maxima = [hi for _, hi, _, _ in extremes]
    for i, (lo, hi, lo_at, _) in enumerate(extremes):
        if lo != hi:
            return VerificationReport(
                kind="gsedf", holds=False,
                reason=f"block {i + 1} counts are not constant",
                family=family_summary(family), minimal=maxima,
                witness=_witness(family, lo_at, lo, block=i + 1, expected=str(hi)),
            )
    return VerificationReport(
        kind="gsedf", holds=True, family=family_summary(family),
        lambdas=maxima, minimal=maxima,
    )


def verify_sedf(family: Family) -> VerificationReport:
    """GSEDF whose per-block lambdas all coincide."""
    report = verify_gsedf(family)
    if not report.holds:
        return report.model_copy(update={"kind": "sedf"})
    lambdas = report.lambdas or []
    if len(set(lambdas)) == 1:
        return report.model_copy(update={"kind": "sedf", "lam": lambdas[0]})
    return report.model_copy(
        update={"kind": "sedf", "holds": False, "reason": "per-block lambdas differ"}
    )


def verify_bgsedf(family: Family, lambdas: Sequence[int]) -> VerificationReport:
    if family.m < 2:
        return _too_small("bgsedf", family)
    if len(lambdas) != family.m:
        raise InvalidInput(f"expected {family.m} per-block bounds, got {len(lambdas)}")
    extremes = _per_block(family)
    maxima = [hi for _, hi, _, _ in extremes]
    for i, ((_, hi, _, hi_at), bound) in enumerate(zip(extremes, lambdas)):
        if hi > bound:
            return VerificationReport(
                kind="bgsedf", holds=False,
                reason=f"block {i + 1} max count {hi} exceeds {bound}",
                family=family_summary(family), target=list(lambdas), minimal=maxima,
                witness=_witness(family, hi_at, hi, block=i + 1, expected=f"<= {bound}"),
            )
    return VerificationReport(
        kind="bgsedf", holds=True, family=family_summary(family),
        target=list(lambdas), minimal=maxima, lambdas=list(lambdas),
    )


def verify_pedf(family: Family) -> VerificationReport:
    """Per size class w_t, the union of the outgoing differences is constant."""
    if family.m < 2:
        return _too_small("pedf", family)
    outgoing = outgoing_counts(family)
    buckets: list[PedfBucket] = []
    first_failure: Optional[Witness] = None
    for w in sorted(set(family.sizes)):
        members = [i for i, k in enumerate(family.sizes) if k == w]
        dense = np.sum([outgoing[i] for i in members], axis=0).tolist()
        lo, hi, lo_at, _ = _nonzero_extremes(family, dense)
        holds = lo == hi
        buckets.append(PedfBucket(w=w, c=len(members), lam=hi if holds else None, holds=holds))
        if not holds and first_failure is None:
            first_failure = _witness(family, lo_at, lo, block=members[0] + 1, expected=str(hi))
    holds = all(b.holds for b in buckets)
    return VerificationReport(
        kind="pedf", holds=holds,
        reason=None if holds else "a size class is not constant",
        family=family_summary(family), buckets=buckets, witness=first_failure,
    )


def classify_bswedf(family: Family, include_counts: bool = True) -> VerificationReport:
    """
    Smallest lambda bounding the weighted external union, and whether it is exact.

    Any disjoint family with m >= 2 is a BSWEDF for its own lambda.
    """
    if family.m < 2:
        return _too_small("bswedf", family)
    union = weighted_external_union(family)
    dense = union.dense()
    lo, hi, _, hi_at = _nonzero_extremes(family, dense)
    lam = max(1, hi)
    return VerificationReport(
        kind="bswedf", holds=True, family=family_summary(family), lam=lam,
        is_swedf=lo == hi, witness=_witness(family, hi_at, hi),
        counts=union.to_json() if include_counts else None,
    )


def verify_swedf(family: Family) -> VerificationReport:
    report = classify_bswedf(family)
    if report.reason == M_TOO_SMALL:
        return report.model_copy(update={"kind": "swedf"})
    return report.model_copy(
        update={
            "kind": "swedf",
            "holds": bool(report.is_swedf),
            "reason": None if report.is_swedf else "weighted union is not constant",
        }
    )


def rwedf_profile(family: Family) -> VerificationReport:
    """
    N_i(delta) table and the reciprocally weighted sum d(delta) = sum_i N_i(delta)/k_i.

    Holds iff d(delta) does not depend on delta, which happens exactly when the
    family is an SWEDF with d = lambda / k_tilde.
    """
    if family.m < 2:
        return _too_small("rwedf", family)
    incoming = incoming_counts(family)
    sizes = family.sizes
    k_tilde = family.k_tilde
    weighted = [
        sum(int(counts[delta]) * (k_tilde // k) for counts, k in zip(incoming, sizes))
        for delta in range(family.n)
    ]
    table = [
        {str(family.group.from_index(d)): int(c[d]) for d in range(1, family.n)}
        for c in incoming
    ]
    reference = weighted[1]
    for delta in range(1, family.n):
        if weighted[delta] != reference:
            report = VerificationReport(
                kind="rwedf", holds=False, reason="d(delta) depends on delta",
                family=family_summary(family), n_table=table,
                witness=_witness(family, delta, weighted[delta],
                                 expected=str(Fraction(reference, k_tilde))),
            )
            break
    else:
        report = VerificationReport(
            kind="rwedf", holds=True, family=family_summary(family),
            d=Fraction(reference, k_tilde), n_table=table,
        )
    swedf = classify_bswedf(family, include_counts=False)
    if report.holds != swedf.is_swedf or (
        report.holds and report.d != Fraction(swedf.lam, k_tilde)
    ):
        raise RuntimeError(f"RWEDF and SWEDF classifications disagree on {family}")
    return report


def bimodal_check(family: Family) -> VerificationReport:
    """
    Every N_i(delta) is 0 or k_i.

    A failing report lists every violating (block, delta, N_i(delta)) and
    keeps the first one, in delta then block order, as its witness.
    """
    if family.m < 2:
        return _too_small("bimodal", family)
    incoming = incoming_counts(family)
    violators = [
        _witness(family, delta, int(counts[delta]), block=i + 1, expected=f"0 or {k}")
        for delta in range(1, family.n)
        for i, (counts, k) in enumerate(zip(incoming, family.sizes))
        if int(counts[delta]) not in (0, k)
    ]
    holds = not violators
    return VerificationReport(
        kind="bimodal", holds=holds,
        reason=None if holds else "some N_i(delta) is neither 0 nor k_i",
        family=family_summary(family), violations=len(violators),
        witness=violators[0] if violators else None,
        violators=violators or None,
    )


def find_violation(report: VerificationReport, block: int, delta) -> Optional[Witness]:
    """The listed violation at (1-based block, delta), if the report has one."""
    for entry in report.violators or []:
        if entry.block == block and entry.element == delta:
            return entry
    return None


def n_value(report: VerificationReport, block: int, delta: str) -> int:
    """Look up N_block(delta) (1-based block) in an rwedf report's table."""
    if report.n_table is None:
        raise InvalidInput("report carries no N_i(delta) table")
    return report.n_table[block - 1].get(delta, 0)


def implication_checks(family: Family) -> dict[str, bool]:
    """
    The EDF-family implications towards (B)SWEDFs, each vacuously true when
    its premise fails.
    """
    if family.m < 2:
        return {}
    k_tilde = family.k_tilde
    sizes = family.sizes
    bswedf = classify_bswedf(family, include_counts=False)
    results: dict[str, bool] = {}

    edf = verify_edf(family)
    regular = len(set(sizes)) == 1
    results["edf_regular_is_swedf"] = not (edf.holds and regular) or (
        bool(bswedf.is_swedf) and bswedf.lam == edf.lam
    )

    gsedf = verify_gsedf(family)
    if gsedf.holds:
        expected = sum(l * k_tilde // k for l, k in zip(gsedf.lambdas, sizes))
        results["gsedf_is_swedf"] = bool(bswedf.is_swedf) and bswedf.lam == expected
    else:
        results["gsedf_is_swedf"] = True

    pedf = verify_pedf(family)
    if pedf.holds:
        expected = sum(b.lam * k_tilde // b.w for b in pedf.buckets)
        results["pedf_is_swedf"] = bool(bswedf.is_swedf) and bswedf.lam == expected
    else:
        results["pedf_is_swedf"] = True

    bedf_min = verify_bedf(family, 0).minimal[0]
    results["bedf_regular_bounds_bswedf"] = not regular or bswedf.lam <= max(1, bedf_min)

    per_block = verify_bgsedf(family, [0] * family.m).minimal
    bound = sum(l * k_tilde // k for l, k in zip(per_block, sizes))
    results["bgsedf_bounds_bswedf"] = bswedf.lam <= max(1, bound)

    if bswedf.is_swedf:
        total = k_tilde * family.a * (family.m - 1)
        results["swedf_divisibility"] = (
            total % (family.n - 1) == 0 and bswedf.lam == total // (family.n - 1)
        )
    return results


_VERIFIERS: dict[str, Callable[[Family], VerificationReport]] = {
    "df": verify_df,
    "pdf": verify_pdf,
    "edf": verify_edf,
    "sedf": verify_sedf,
    "gsedf": verify_gsedf,
    "pedf": verify_pedf,
    "bswedf": classify_bswedf,
    "swedf": verify_swedf,
    "rwedf": rwedf_profile,
    "bimodal": bimodal_check,
}

VERIFIER_KINDS = (*_VERIFIERS, "bedf", "bgsedf")


def verify(family: Family, kind: str, bounds: Optional[Sequence[int]] = None) -> VerificationReport:
    """Dispatch by kind name; the bounded kinds take their target bounds."""
    if kind == "bedf":
        if not bounds or len(bounds) != 1:
            raise InvalidInput("bedf needs exactly one bound lambda")
        return verify_bedf(family, bounds[0])
    if kind == "bgsedf":
        if not bounds:
            raise InvalidInput("bgsedf needs one bound per block")
        return verify_bgsedf(family, bounds)
    if kind == "bswedf" and bounds:
        report = classify_bswedf(family)
        if report.lam is not None and report.lam > bounds[0]:
            return report.model_copy(
                update={"holds": False, "target": [bounds[0]],
                        "reason": f"lambda {report.lam} exceeds {bounds[0]}"}
            )
        return report.model_copy(update={"target": [bounds[0]]})
    try:
        verifier = _VERIFIERS[kind]
    except KeyError:
        raise InvalidInput(f"unknown verification kind {kind!r}; choose from {sorted(VERIFIER_KINDS)}")
    logger.debug("running %s verifier on %s", kind, family)
    return verifier(family)


def classify_all(family: Family) -> list[VerificationReport]:
    """Every unbounded verifier plus the minimal bounded ones, in taxonomy order."""
    reports = [verify(family, kind) for kind in _VERIFIERS]
    if family.m >= 2:
        reports.insert(3, verify_bedf(family, verify_bedf(family, 0).minimal[0]))
        reports.insert(6, verify_bgsedf(family, verify_bgsedf(family, [0] * family.m).minimal))
    return reports
