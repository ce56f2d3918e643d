"""
Family of pairwise-disjoint blocks over a finite abelian group.

Blocks keep the order (and the element order) they were given in, so
construction outputs can be listed exactly as published. Equality of
families is order-insensitive via `canonical_key`.
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from edfkit.core.errors import InvalidInput, NotDisjoint
from edfkit.core.groups import (
    ElementLike,
    GroupElement,
    GroupSpec,
    crt_flatten,
    crt_lift,
    flattened_group,
    lcm_list,
    make_group,
)

Block = tuple[GroupElement, ...]


@dataclass(frozen=True)
class Family:
    """
    A group plus m >= 1 nonempty, duplicate-free, pairwise-disjoint blocks.

    Derived values follow the usual notation: K = (k_1..k_m), a = sum K,
    k_tilde = lcm K.
    """

    group: GroupSpec
    blocks: tuple[Block, ...]

    def __post_init__(self):
        if not self.blocks:
            raise InvalidInput("a family needs at least one block")
        owner: dict[GroupElement, int] = {}
        for i, block in enumerate(self.blocks):
            if not block:
                raise InvalidInput(f"block {i + 1} is empty", {"block": i + 1})
            seen: set[GroupElement] = set()
            for g in block:
                if g.group != self.group:
                    raise InvalidInput(
                        f"element {g} of block {i + 1} is not in {self.group}",
                        {"block": i + 1},
                    )
                if g in seen:
                    raise InvalidInput(
                        f"element {g} repeated inside block {i + 1}",
                        {"block": i + 1, "element": g.to_json()},
                    )
                seen.add(g)
                if g in owner:
                    raise NotDisjoint(
                        f"element {g} appears in blocks {owner[g] + 1} and {i + 1}",
                        {"blocks": [owner[g] + 1, i + 1], "element": g.to_json()},
                    )
                owner[g] = i

    @classmethod
    def from_values(
        cls, group: GroupSpec, blocks: Iterable[Iterable[ElementLike]]
    ) -> "Family":
        return cls(group, tuple(tuple(group.element(v) for v in block) for block in blocks))

    @property
    def n(self) -> int:
        return self.group.order

    @property
    def m(self) -> int:
        return len(self.blocks)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    @property
    def a(self) -> int:
        return sum(self.sizes)

    @property
    def k_tilde(self) -> int:
        return lcm_list(self.sizes)

    @property
    def is_disjoint(self) -> bool:
        return len({g for block in self.blocks for g in block}) == self.a

    @property
    def is_partition(self) -> bool:
        return self.a == self.n

    @cached_property
    def index_blocks(self) -> tuple[np.ndarray, ...]:
        """Blocks as arrays of element indices."""
        return tuple(
            np.array([self.group.index(g) for g in block], dtype=np.int64)
            for block in self.blocks
        )

    @cached_property
    def owner(self) -> np.ndarray:
        """owner[index] = block number (0-based) or -1 for uncovered elements."""
        table = np.full(self.n, -1, dtype=np.int64)
        for i, idx in enumerate(self.index_blocks):
            table[idx] = i
        return table

    def missing_elements(self) -> list[GroupElement]:
        return [self.group.from_index(int(i)) for i in np.flatnonzero(self.owner < 0)]

    def translate(self, g: ElementLike) -> "Family":
        shift = self.group.element(g)
        return Family(self.group, tuple(tuple(x + shift for x in b) for b in self.blocks))

    def negate(self) -> "Family":
        return Family(self.group, tuple(tuple(-x for x in b) for b in self.blocks))

    def flatten(self) -> "Family":
        """Re-present a coprime product family over the cyclic group Z_n."""
        if self.group.is_cyclic_presentation:
            return self
        target = flattened_group(self.group)
        return Family.from_values(
            target, [[crt_flatten(self.group, g) for g in b] for b in self.blocks]
        )

    def lift(self, factors: Sequence[int]) -> "Family":
        """Re-present a cyclic family over the coprime product with these factors."""
        target = make_group(factors)
        if target.order != self.n or not self.group.is_cyclic_presentation:
            raise InvalidInput(f"cannot lift a family over {self.group} to {target}")
        return Family(
            target,
            tuple(tuple(crt_lift(factors, g.coords[0]) for g in b) for b in self.blocks),
        )

    def canonical_key(self) -> tuple:
        return tuple(
            sorted((len(b), tuple(sorted(int(i) for i in idx)))
                   for b, idx in zip(self.blocks, self.index_blocks))
        )

    def canonical_form(self) -> "Family":
        """Lexicographically smallest translate, blocks sorted by (size, elements)."""
        best_key = None
        for shift in range(self.n):
            key = self.translate(self.group.from_index(shift)).canonical_key()
            if best_key is None or key < best_key:
                best_key = key
        return Family(
            self.group,
            tuple(tuple(self.group.from_index(i) for i in elems) for _, elems in best_key),
        )

    def to_values(self) -> list[list]:
        return [[g.to_json() for g in b] for b in self.blocks]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Family):
            return NotImplemented
        return self.group == other.group and self.canonical_key() == other.canonical_key()

    def __hash__(self) -> int:
        return hash((self.group, self.canonical_key()))

    def __str__(self) -> str:
        inner = ",".join("{" + ",".join(str(g) for g in b) + "}" for b in self.blocks)
        return f"{{{inner}}} over {self.group}"
