import pytest

from edfkit.core.errors import GroupMismatch, InvalidInput
from edfkit.core.groups import make_group
from edfkit.core.multiset import (
    DiffMultiset,
    external_diffs,
    internal_diffs,
    weighted_block,
    weighted_external_union,
    weighted_union_decomposition,
)


def elements(group, values):
    return [group.element(v) for v in values]


def test_internal_differences_of_a_planar_difference_set():
    z7 = make_group([7])
    assert internal_diffs(elements(z7, [0, 1, 3])) == DiffMultiset.uniform(z7, 1, exclude=[0])


def test_external_differences_use_the_first_block_as_minuend():
    z10 = make_group([10])
    diffs = external_diffs(elements(z10, [5]), elements(z10, [0, 4, 6]))
    assert diffs.dense() == [0, 1, 0, 0, 0, 1, 0, 0, 0, 1]
    assert external_diffs(elements(z10, [0, 4, 6]), elements(z10, [5])) == diffs.negate()


def test_counts_are_multiplicities():
    z5 = make_group([5])
    d = DiffMultiset.from_elements(z5, elements(z5, [1, 1, 3]))
    assert d.count(1) == 2
    assert d.count(2) == 0
    assert d.total == 3
    assert len(d) == 2
    assert d.scale(3).count(1) == 6
    assert (d + d).total == 6
    assert d.restrict([3]).dense() == [0, 0, 0, 1, 0]


def test_multisets_over_different_groups_do_not_mix():
    with pytest.raises(GroupMismatch):
        DiffMultiset(make_group([5])) + DiffMultiset(make_group([7]))


def test_nonzero_extremes_break_ties_lexicographically():
    z5 = make_group([5])
    lo, hi, lo_at, hi_at = DiffMultiset.from_dense(z5, [9, 2, 3, 3, 2]).nonzero_extremes()
    assert (lo, hi) == (2, 3)
    assert lo_at.coords == (1,)
    assert hi_at.coords == (2,)


def test_negative_multiplicity_rejected():
    with pytest.raises(InvalidInput):
        DiffMultiset(make_group([5]), {1: -1})


def test_weighted_blocks(z10_amd):
    assert weighted_block(z10_amd, 0).multiplier == 3
    assert weighted_block(z10_amd, 2).multiplier == 1
    assert weighted_block(z10_amd, 2).size == 3


def test_weighted_external_union(z10_amd):
    union = weighted_external_union(z10_amd)
    assert union.dense() == [0, 4, 4, 3, 3, 4, 1, 3, 4, 4]
    assert union.total == z10_amd.k_tilde * z10_amd.a * (z10_amd.m - 1)


def test_weighted_union_is_the_sum_of_pair_decompositions(z10_swedf):
    group = z10_swedf.group
    total = DiffMultiset(group)
    for i in range(z10_swedf.m):
        for j in range(i + 1, z10_swedf.m):
            total = total + weighted_union_decomposition(z10_swedf, i, j)
    assert total == weighted_external_union(z10_swedf)
    assert total == DiffMultiset.uniform(group, 4, exclude=[0])


def test_pair_decomposition_needs_distinct_blocks(z10_amd):
    with pytest.raises(InvalidInput):
        weighted_union_decomposition(z10_amd, 1, 1)
