import random
from fractions import Fraction

import pytest

from edfkit.core.cyclotomy import cyclotomic_class
from edfkit.core.errors import InvalidInput
from edfkit.core.groups import enumerate_group, make_group
from edfkit.core.multiset import weighted_external_union
from edfkit.models.family import Family
from edfkit.services import verification
from edfkit.services.verification import (
    bimodal_check,
    classify_all,
    classify_bswedf,
    family_summary,
    find_violation,
    implication_checks,
    n_value,
    rwedf_profile,
    verify,
    verify_bedf,
    verify_bgsedf,
    verify_df,
    verify_edf,
    verify_gsedf,
    verify_pdf,
    verify_pedf,
    verify_sedf,
    verify_swedf,
)


def test_bswedf_lambda_and_witness(z10_amd):
    report = classify_bswedf(z10_amd)
    assert report.holds
    assert report.lam == 4
    assert report.is_swedf is False
    assert report.witness.element == 1
    assert report.counts["6"] == 1


def test_swedf(z10_swedf):
    report = verify_swedf(z10_swedf)
    assert report.holds
    assert report.lam == 4


def test_non_swedf_reports_reason(z10_amd):
    report = verify_swedf(z10_amd)
    assert not report.holds
    assert report.reason


def test_single_block_is_a_result_not_an_error():
    family = Family.from_values(make_group([7]), [[0, 1, 3]])
    report = verify_edf(family)
    assert not report.holds
    assert report.reason == "m<2"


def test_pdf(z15_pdf):
    report = verify_pdf(z15_pdf)
    assert report.holds
    assert report.lam == 3


def test_pdf_needs_a_partition(z10_amd):
    report = verify_pdf(z10_amd)
    assert not report.holds
    assert report.witness.element == 1


def test_edf_from_a_regular_swedf():
    # {{0},{1}} over Z_3: every nonzero difference appears exactly once
    family = Family.from_values(make_group([3]), [[0], [1]])
    assert verify_edf(family).lam == 1
    assert implication_checks(family)["edf_regular_is_swedf"]


def test_bedf_minimal_lambda(z10_amd):
    assert verify_bedf(z10_amd, 2).holds
    report = verify_bedf(z10_amd, 1)
    assert not report.holds
    assert report.minimal == [2]


def test_gsedf_failure_names_the_block(z10_amd):
    report = verify_gsedf(z10_amd)
    assert not report.holds
    assert report.witness.block is not None
    assert verify_sedf(z10_amd).kind == "sedf"
    assert not verify_sedf(z10_amd).holds


def test_bgsedf_bounds(z10_amd):
    minimal = verify_bgsedf(z10_amd, [0, 0, 0]).minimal
    assert verify_bgsedf(z10_amd, minimal).holds
    with pytest.raises(InvalidInput):
        verify_bgsedf(z10_amd, [1, 1])


def test_pedf_buckets(z10_swedf):
    report = verify_pedf(z10_swedf)
    assert [(b.w, b.c) for b in report.buckets] == [(1, 2), (2, 2)]


def test_rwedf_profile_matches_swedf(z10_swedf, z10_amd):
    report = rwedf_profile(z10_swedf)
    assert report.holds
    assert report.d == Fraction(2)
    assert not rwedf_profile(z10_amd).holds


def test_n_table_lookup(z15_swedf):
    report = rwedf_profile(z15_swedf)
    assert report.holds
    assert report.d == Fraction(4)
    assert n_value(report, 3, "6") == 3
    with pytest.raises(InvalidInput):
        n_value(classify_bswedf(z15_swedf), 1, "1")


def test_bimodal_fails_for_the_z15_swedf(z15_swedf):
    report = bimodal_check(z15_swedf)
    assert not report.holds
    assert report.violations == len(report.violators)
    assert report.witness == report.violators[0]
    assert find_violation(report, 3, 6).count == 3
    assert find_violation(report, 3, 6).expected == "0 or 4"
    assert all(v.count not in (0, z15_swedf.sizes[v.block - 1]) for v in report.violators)


def test_bimodal_violations_are_ordered_by_delta_then_block(z15_swedf):
    violators = bimodal_check(z15_swedf).violators
    keys = [(v.element, v.block) for v in violators]
    assert keys == sorted(keys)


def test_bimodal_holds_for_singletons():
    family = Family.from_values(make_group([3]), [[0], [1], [2]])
    assert bimodal_check(family).holds


@pytest.mark.parametrize("fixture", ["z10_amd", "z10_k122", "z10_swedf", "z15_swedf", "z15_pdf"])
def test_implications_hold(fixture, request):
    family = request.getfixturevalue(fixture)
    assert all(implication_checks(family).values())


@pytest.mark.parametrize("shift", [1, 3, 7])
def test_lambda_invariant_under_translation_and_negation(z10_amd, shift):
    lam = classify_bswedf(z10_amd).lam
    assert classify_bswedf(z10_amd.translate(shift)).lam == lam
    assert classify_bswedf(z10_amd.negate()).lam == lam


def test_product_and_flattened_forms_agree(z15_swedf):
    lifted = z15_swedf.lift([3, 5])
    assert classify_bswedf(lifted).lam == classify_bswedf(z15_swedf).lam == 16
    assert lifted.flatten() == z15_swedf


def test_verify_dispatch(z10_amd):
    assert verify(z10_amd, "bedf", [4]).holds
    assert verify(z10_amd, "bswedf", [3]).holds is False
    assert verify(z10_amd, "bswedf", [4]).holds
    with pytest.raises(InvalidInput):
        verify(z10_amd, "bedf")
    with pytest.raises(InvalidInput):
        verify(z10_amd, "nonsense")


def test_classify_all_runs_every_kind(z10_swedf):
    kinds = [r.kind for r in classify_all(z10_swedf)]
    assert set(kinds) == set(verification.VERIFIER_KINDS)


def weighted_union_by_membership(family: Family) -> list[int]:
    """Count x - y over x, y in different blocks, weighting y in B_j by k~/k_j."""
    group = family.group
    owner = {g: j for j, block in enumerate(family.blocks) for g in block}
    counts = [0] * group.order
    for delta in enumerate_group(group)[1:]:
        for y, j in owner.items():
            i = owner.get(y + delta)
            if i is not None and i != j:
                counts[group.index(delta)] += family.k_tilde // family.sizes[j]
    return counts


def random_family(rng: random.Random) -> Family:
    factors = rng.choice([[rng.randint(3, 16)], [2, rng.randint(2, 7)], [3, 5]])
    group = make_group(factors)
    elements = enumerate_group(group)
    m = rng.randint(2, min(5, len(elements)))
    chosen = rng.sample(elements, rng.randint(m, len(elements)))
    cuts = sorted(rng.sample(range(1, len(chosen)), m - 1))
    bounds = [0, *cuts, len(chosen)]
    return Family(group, tuple(tuple(chosen[lo:hi]) for lo, hi in zip(bounds, bounds[1:])))


def test_weighted_union_matches_membership_count_z10(z10_amd):
    assert weighted_union_by_membership(z10_amd) == [0, 4, 4, 3, 3, 4, 1, 3, 4, 4]


def test_lambda_matches_membership_count_on_random_families():
    rng = random.Random(7)
    for _ in range(200):
        family = random_family(rng)
        counts = weighted_union_by_membership(family)
        assert weighted_external_union(family).dense() == counts
        report = classify_bswedf(family)
        assert report.lam == max(1, max(counts[1:]))
        assert report.is_swedf == (len(set(counts[1:])) == 1)


def invariants(report):
    buckets = [b.model_dump() for b in report.buckets or []]
    return (report.kind, report.holds, report.lam, report.lambdas, report.minimal,
            report.is_swedf, report.d, report.violations, buckets)


@pytest.mark.parametrize("fixture", ["z10_amd", "z10_k122", "z10_swedf", "z15_swedf", "z15_pdf"])
@pytest.mark.parametrize("shift", [1, 4])
def test_every_verifier_is_translation_and_negation_invariant(fixture, shift, request):
    family = request.getfixturevalue(fixture)
    expected = [invariants(r) for r in classify_all(family)]
    assert [invariants(r) for r in classify_all(family.translate(shift))] == expected
    assert [invariants(r) for r in classify_all(family.negate())] == expected


def test_df_from_square_classes_of_13():
    group = make_group([13])
    family = Family.from_values(group, [cyclotomic_class(13, 2, i).elements for i in range(2)])
    report = verify_df(family)
    assert report.holds
    assert report.lam == 5


def test_df_small_cases():
    z3, z5 = make_group([3]), make_group([5])
    assert verify_df(Family.from_values(z3, [[0, 1]])).lam == 1
    assert not verify_df(Family.from_values(z5, [[0, 1], [2]])).holds


def test_singletons_are_not_a_difference_family():
    report = verify_df(Family.from_values(make_group([5]), [[0], [1]]))
    assert not report.holds
    assert report.reason == "blocks have no internal differences"
    assert report.lam is None


def test_gsedf_of_z3_singletons():
    report = verify_gsedf(Family.from_values(make_group([3]), [[0], [1], [2]]))
    assert report.holds
    assert report.lambdas == [1, 1, 1]


def test_family_summary_fields(z15_pdf):
    summary = family_summary(Family.from_values(make_group([10]), [[0, 4, 6], [5], [2]]))
    assert summary.K == [3, 1, 1]
    assert summary.sorted_K == [1, 1, 3]
    assert summary.k_tilde == 3
    assert summary.disjoint
    assert not summary.is_partition
    assert family_summary(z15_pdf).is_partition
