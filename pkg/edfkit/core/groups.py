"""
Finite abelian groups presented as direct products of cyclic groups.

Elements are reduced residue tuples; equality is structural. Indices use
mixed radix with the first factor most significant, so index order is the
lexicographic order on coordinates.
"""
import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np
from sympy.ntheory.modular import crt

from edfkit.core.errors import GroupMismatch, InvalidGroup, InvalidInput, NotCoprime

ElementLike = Union["GroupElement", int, Sequence[int]]


@dataclass(frozen=True, order=True)
class GroupSpec:
    """Z_{n1} x ... x Z_{nr}, factors kept in the order given."""

    factors: tuple[int, ...]

    def __post_init__(self):
        if not self.factors:
            raise InvalidGroup("a group needs at least one cyclic factor")
        for n in self.factors:
            if not isinstance(n, int) or isinstance(n, bool) or n < 2:
                raise InvalidGroup(
                    f"cyclic factor {n!r} must be an integer >= 2",
                    {"factors": list(self.factors)},
                )

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def is_cyclic_presentation(self) -> bool:
        return len(self.factors) == 1

    @property
    def is_coprime(self) -> bool:
        return all(
            math.gcd(a, b) == 1 for a, b in itertools.combinations(self.factors, 2)
        )

    @cached_property
    def radix(self) -> np.ndarray:
        weights = [1] * self.rank
        for i in range(self.rank - 2, -1, -1):
            weights[i] = weights[i + 1] * self.factors[i + 1]
        return np.array(weights, dtype=np.int64)

    @cached_property
    def moduli(self) -> np.ndarray:
        return np.array(self.factors, dtype=np.int64)

    @property
    def zero(self) -> "GroupElement":
        return GroupElement((0,) * self.rank, self)

    def element(self, value: ElementLike, strict: bool = False) -> "GroupElement":
        """
        Build an element from an int (single-factor groups) or a residue sequence.

        Residues are reduced modulo the factor orders; with strict, a residue
        outside [0, n_i) raises InvalidInput instead.
        """
        if isinstance(value, GroupElement):
            if value.group != self:
                raise GroupMismatch(f"element {value} belongs to {value.group}, not {self}")
            return value
        if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
            if not self.is_cyclic_presentation:
                raise InvalidInput(
                    f"bare integer {value} given for non-cyclic group {self}; use a residue array"
                )
            value = (value,)
        coords = tuple(int(c) for c in value)
        if len(coords) != self.rank:
            raise InvalidInput(
                f"element {list(coords)} has {len(coords)} coordinates, group {self} needs {self.rank}"
            )
        if strict:
            for c, n in zip(coords, self.factors):
                if not 0 <= c < n:
                    raise InvalidInput(f"residue {c} is outside [0, {n})", {"factors": list(self.factors)})
        return GroupElement(tuple(c % n for c, n in zip(coords, self.factors)), self)

    def index(self, g: "GroupElement") -> int:
        return sum(c * int(w) for c, w in zip(g.coords, self.radix))

    def from_index(self, i: int) -> "GroupElement":
        coords = []
        for n in reversed(self.factors):
            i, r = divmod(i, n)
            coords.append(r)
        return GroupElement(tuple(reversed(coords)), self)

    def coords_array(self, elements: Iterable["GroupElement"]) -> np.ndarray:
        """Stack element coordinates into an (k, rank) integer array."""
        rows = [g.coords for g in elements]
        return np.array(rows, dtype=np.int64).reshape(len(rows), self.rank)

    def encode(self, coords: np.ndarray) -> np.ndarray:
        """Map a (..., rank) coordinate array to element indices."""
        return (coords % self.moduli) @ self.radix

    def __str__(self) -> str:
        return " x ".join(f"Z{n}" for n in self.factors)


@dataclass(frozen=True, order=True)
class GroupElement:
    """A residue tuple in a GroupSpec."""

    coords: tuple[int, ...]
    group: GroupSpec = field(repr=False)

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return add(self, other)

    def __neg__(self) -> "GroupElement":
        return neg(self)

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return sub(self, other)

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def to_json(self) -> Union[int, list[int]]:
        """Bare integer for single-factor groups, residue array otherwise."""
        if self.group.is_cyclic_presentation:
            return self.coords[0]
        return list(self.coords)

    def __str__(self) -> str:
        if self.group.is_cyclic_presentation:
            return str(self.coords[0])
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def make_group(factors: Iterable[int]) -> GroupSpec:
    """Validate a factor list and build the group."""
    return GroupSpec(tuple(factors))


def _check_same(g: GroupElement, h: GroupElement) -> GroupSpec:
    if g.group != h.group:
        raise GroupMismatch(f"cannot combine elements of {g.group} and {h.group}")
    return g.group


def add(g: GroupElement, h: GroupElement) -> GroupElement:
    group = _check_same(g, h)
    return GroupElement(
        tuple((a + b) % n for a, b, n in zip(g.coords, h.coords, group.factors)), group
    )


def neg(g: GroupElement) -> GroupElement:
    return GroupElement(tuple((-a) % n for a, n in zip(g.coords, g.group.factors)), g.group)


def sub(g: GroupElement, h: GroupElement) -> GroupElement:
    return add(g, neg(h))


def enumerate_group(group: GroupSpec) -> list[GroupElement]:
    """All elements in lexicographic coordinate order, zero first."""
    return [
        GroupElement(coords, group)
        for coords in itertools.product(*(range(n) for n in group.factors))
    ]


def crt_flatten(group: GroupSpec, g: GroupElement) -> int:
    """
    The integer x in Z_n with x = coord_i (mod n_i) for every factor.

    Raises:
        NotCoprime: if the factors are not pairwise coprime
    """
    if g.group != group:
        raise GroupMismatch(f"element {g} does not belong to {group}")
    if not group.is_coprime:
        raise NotCoprime(f"factors {list(group.factors)} are not pairwise coprime")
    if group.is_cyclic_presentation:
        return g.coords[0]
    x, _ = crt(list(group.factors), list(g.coords))
    return int(x)


def crt_lift(factors: Sequence[int], x: int) -> GroupElement:
    """Inverse of crt_flatten: residues of x modulo each factor."""
    group = make_group(factors)
    if not group.is_coprime:
        raise NotCoprime(f"factors {list(group.factors)} are not pairwise coprime")
    return GroupElement(tuple(x % n for n in group.factors), group)


def flattened_group(group: GroupSpec) -> GroupSpec:
    """The cyclic group Z_n isomorphic to a coprime product."""
    if not group.is_coprime:
        raise NotCoprime(f"factors {list(group.factors)} are not pairwise coprime")
    return GroupSpec((group.order,))


def lcm_list(values: Iterable[int]) -> int:
    values = list(values)
    if not values:
        raise InvalidInput("lcm of an empty list is undefined")
    if any(v < 1 for v in values):
        raise InvalidInput(f"lcm inputs must be >= 1, got {values}")
    return math.lcm(*values)
