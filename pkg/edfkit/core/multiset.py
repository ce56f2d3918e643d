"""
Exact multiset calculus of internal and external differences.

Convention: D(B1, B2) = { a - b : a in B1, b in B2 }, the first argument
contributes the minuend. Counts are exact Python integers; numpy is only used
to tabulate raw pair differences, which are bounded by n^2.
"""
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Sequence

import numpy as np

from edfkit.core.errors import GroupMismatch, InvalidInput
from edfkit.core.groups import ElementLike, GroupElement, GroupSpec
from edfkit.models.family import Block, Family


class DiffMultiset:
    """Sparse count table element -> multiplicity (absent means 0)."""

    __slots__ = ("group", "_counts", "_total")

    def __init__(self, group: GroupSpec, counts: Optional[Mapping[int, int]] = None):
        self.group = group
        self._counts: dict[int, int] = {}
        for key, value in (counts or {}).items():
            value = int(value)
            if value < 0:
                raise InvalidInput(f"negative multiplicity {value} for index {key}")
            if value:
                self._counts[int(key)] = value
        self._total = sum(self._counts.values())

    @classmethod
    def from_elements(cls, group: GroupSpec, elements: Iterable[GroupElement]) -> "DiffMultiset":
        counts: dict[int, int] = {}
        for g in elements:
            if g.group != group:
                raise GroupMismatch(f"element {g} is not in {group}")
            key = group.index(g)
            counts[key] = counts.get(key, 0) + 1
        return cls(group, counts)

    @classmethod
    def from_dense(cls, group: GroupSpec, dense: Sequence[int]) -> "DiffMultiset":
        return cls(group, {i: int(c) for i, c in enumerate(dense) if c})

    @classmethod
    def uniform(
        cls, group: GroupSpec, multiplicity: int, exclude: Iterable[ElementLike] = ()
    ) -> "DiffMultiset":
        """multiplicity ⊠ (G minus the excluded elements)."""
        skip = {group.index(group.element(x)) for x in exclude}
        return cls(group, {i: multiplicity for i in range(group.order) if i not in skip})

    def count(self, g: ElementLike) -> int:
        return self._counts.get(self.group.index(self.group.element(g)), 0)

    def count_index(self, index: int) -> int:
        return self._counts.get(index, 0)

    @property
    def total(self) -> int:
        return self._total

    def __len__(self) -> int:
        return len(self._counts)

    def items(self) -> Iterator[tuple[GroupElement, int]]:
        for key in sorted(self._counts):
            yield self.group.from_index(key), self._counts[key]

    def dense(self) -> list[int]:
        return [self._counts.get(i, 0) for i in range(self.group.order)]

    def scale(self, c: int) -> "DiffMultiset":
        if c < 1:
            raise InvalidInput(f"scale factor must be >= 1, got {c}")
        return DiffMultiset(self.group, {k: v * c for k, v in self._counts.items()})

    def negate(self) -> "DiffMultiset":
        return DiffMultiset.from_dense(
            self.group, [self.count(-self.group.from_index(i)) for i in range(self.group.order)]
        )

    def restrict(self, elements: Iterable[ElementLike]) -> "DiffMultiset":
        keys = {self.group.index(self.group.element(x)) for x in elements}
        return DiffMultiset(self.group, {k: v for k, v in self._counts.items() if k in keys})

    def __add__(self, other: "DiffMultiset") -> "DiffMultiset":
        if other.group != self.group:
            raise GroupMismatch(f"cannot unite multisets over {self.group} and {other.group}")
        merged = dict(self._counts)
        for k, v in other._counts.items():
            merged[k] = merged.get(k, 0) + v
        return DiffMultiset(self.group, merged)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiffMultiset):
            return NotImplemented
        return self.group == other.group and self._counts == other._counts

    def __repr__(self) -> str:
        return f"DiffMultiset({self.group}, total={self._total}, support={len(self._counts)})"

    def nonzero_extremes(self) -> tuple[int, int, GroupElement, GroupElement]:
        """
        (min count, max count, argmin, argmax) over G minus {0}.

        Ties go to the lexicographically smallest element.
        """
        lo = hi = None
        lo_at = hi_at = None
        for i in range(1, self.group.order):
            c = self._counts.get(i, 0)
            if hi is None or c > hi:
                hi, hi_at = c, i
            if lo is None or c < lo:
                lo, lo_at = c, i
        if hi is None:
            zero = self.group.zero
            return 0, 0, zero, zero
        return lo, hi, self.group.from_index(lo_at), self.group.from_index(hi_at)

    def to_json(self) -> dict[str, int]:
        return {str(g): c for g, c in self.items()}


@dataclass(frozen=True)
class WeightedBlock:
    """B~_i = (k_tilde / |B_i|) ⊠ B_i."""

    base: Block
    multiplier: int

    @property
    def size(self) -> int:
        return self.multiplier * len(self.base)

    def elements(self) -> list[GroupElement]:
        return [g for g in self.base for _ in range(self.multiplier)]


def _group_of(*blocks: Sequence[GroupElement], group: Optional[GroupSpec] = None) -> GroupSpec:
    for block in blocks:
        for g in block:
            if group is None:
                group = g.group
            elif g.group != group:
                raise GroupMismatch(f"element {g} is not in {group}")
    if group is None:
        raise InvalidInput("cannot infer the group of empty blocks")
    return group


def pair_counts(group: GroupSpec, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Dense int64 counts of D(left, right) from (k, rank) coordinate arrays."""
    if len(left) == 0 or len(right) == 0:
        return np.zeros(group.order, dtype=np.int64)
    diffs = left[:, None, :] - right[None, :, :]
    return np.bincount(group.encode(diffs).ravel(), minlength=group.order)


def internal_diffs(block: Sequence[GroupElement], group: Optional[GroupSpec] = None) -> DiffMultiset:
    """D(B): the |B|(|B|-1) ordered differences of distinct elements."""
    group = _group_of(block, group=group)
    coords = group.coords_array(block)
    dense = pair_counts(group, coords, coords)
    dense[0] -= len(block)
    return DiffMultiset.from_dense(group, dense.tolist())


def external_diffs(
    left: Sequence[GroupElement], right: Sequence[GroupElement], group: Optional[GroupSpec] = None
) -> DiffMultiset:
    group = _group_of(left, right, group=group)
    dense = pair_counts(group, group.coords_array(left), group.coords_array(right))
    return DiffMultiset.from_dense(group, dense.tolist())


def scale(multiset: DiffMultiset, c: int) -> DiffMultiset:
    return multiset.scale(c)


def weighted_block(family: Family, i: int) -> WeightedBlock:
    """B~_i for the 0-based block index i."""
    if not 0 <= i < family.m:
        raise InvalidInput(f"block index {i} outside [0, {family.m})")
    return WeightedBlock(family.blocks[i], family.k_tilde // family.sizes[i])


def outgoing_counts(family: Family) -> list[np.ndarray]:
    """For each i, dense counts of the union over j != i of D(B_i, B_j)."""
    group = family.group
    union = group.coords_array(g for b in family.blocks for g in b)
    out = []
    for block in family.blocks:
        coords = group.coords_array(block)
        out.append(pair_counts(group, coords, union) - pair_counts(group, coords, coords))
    return out


def incoming_counts(family: Family) -> list[np.ndarray]:
    """
    For each i, dense counts of the union over j != i of D(B_j, B_i).

    Entry delta of the i-th array is N_i(delta).
    """
    group = family.group
    union = group.coords_array(g for b in family.blocks for g in b)
    out = []
    for block in family.blocks:
        coords = group.coords_array(block)
        out.append(pair_counts(group, union, coords) - pair_counts(group, coords, coords))
    return out


def weighted_external_union(family: Family) -> DiffMultiset:
    """
    The union over i != j of D(B_i, B~_j).

    Its total size is k_tilde * a * (m - 1) and 0 never occurs, since blocks
    are disjoint.
    """
    if family.m < 2:
        raise InvalidInput("the weighted external union needs m >= 2 blocks")
    k_tilde = family.k_tilde
    total = np.zeros(family.n, dtype=object)
    for size, counts in zip(family.sizes, incoming_counts(family)):
        total += counts.astype(object) * (k_tilde // size)
    return DiffMultiset.from_dense(family.group, total.tolist())


def weighted_union_decomposition(family: Family, i: int, j: int) -> DiffMultiset:
    """D(B_i, B~_j) ∪ D(B_j, B~_i) for 0-based i != j."""
    if i == j:
        raise InvalidInput("the pair decomposition needs two distinct blocks")
    wi, wj = weighted_block(family, i), weighted_block(family, j)
    forward = external_diffs(family.blocks[i], family.blocks[j], family.group).scale(wj.multiplier)
    backward = external_diffs(family.blocks[j], family.blocks[i], family.group).scale(wi.multiplier)
    return forward + backward
