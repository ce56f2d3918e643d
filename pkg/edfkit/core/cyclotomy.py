"""
Prime-field arithmetic and cyclotomic classes.

D^e_i = { alpha^(i + e*j) : 0 <= j < (p-1)/e } for the smallest primitive
root alpha of F_p. Only prime fields are supported.
"""
from dataclasses import dataclass
from functools import lru_cache

from sympy import isprime, perfect_power, primitive_root as _sympy_primitive_root
from sympy.ntheory import n_order

from edfkit.core.errors import InvalidCyclotomy, NotPrime
from edfkit.core.groups import make_group
from edfkit.models.family import Family


def require_odd_prime(p: int) -> None:
    """
    Raises:
        NotPrime: for composites, prime powers (extension fields) and p = 2
    """
    if not isinstance(p, int) or p < 3 or not isprime(p):
        power = perfect_power(p) if isinstance(p, int) and p > 3 else False
        if power and isprime(power[0]):
            raise NotPrime(
                f"{p} = {power[0]}^{power[1]} is a prime power; extension fields GF(p^m) are not supported"
            )
        raise NotPrime(f"{p} is not an odd prime")


@dataclass(frozen=True)
class PrimeField:
    """F_p with a fixed primitive root."""

    p: int
    alpha: int

    def power(self, exponent: int) -> int:
        return pow(self.alpha, exponent % (self.p - 1), self.p)

    def multiplicative_order(self, x: int) -> int:
        return int(n_order(x % self.p, self.p))


@dataclass(frozen=True)
class CyclotomicClass:
    """The coset alpha^i <alpha^e> of the index-e multiplicative subgroup."""

    p: int
    e: int
    i: int
    # generation order j = 0, 1, ...
    elements: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.elements)

    def as_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def negated(self) -> tuple[int, ...]:
        return tuple((-x) % self.p for x in self.elements)


def primitive_root(p: int) -> int:
    """Smallest positive primitive root of an odd prime p."""
    return prime_field(p).alpha


@lru_cache(maxsize=256)
def prime_field(p: int) -> PrimeField:
    require_odd_prime(p)
    return PrimeField(p=p, alpha=int(_sympy_primitive_root(p)))


@lru_cache(maxsize=1024)
def cyclotomic_class(p: int, e: int, i: int) -> CyclotomicClass:
    """
    Args:
        p: odd prime
        e: index, must divide p - 1
        i: class index in [0, e)

    Raises:
        NotPrime: if p is not an odd prime
        InvalidCyclotomy: if e does not divide p - 1 or i is out of range
    """
    field = prime_field(p)
    if e < 1 or (p - 1) % e != 0:
        raise InvalidCyclotomy(f"e={e} does not divide p-1={p - 1}")
    if not 0 <= i < e:
        raise InvalidCyclotomy(f"class index i={i} outside [0, {e})")
    size = (p - 1) // e
    return CyclotomicClass(
        p=p, e=e, i=i, elements=tuple(field.power(i + e * j) for j in range(size))
    )


def cyclotomic_classes(p: int, e: int) -> list[CyclotomicClass]:
    return [cyclotomic_class(p, e, i) for i in range(e)]


def qr_pdf(p: int) -> Family:
    """
    {{0}, D^2_0, D^2_1} over Z_p.

    The partitioned-difference-family property is not asserted here; callers
    run verify_pdf on the result.
    """
    require_odd_prime(p)
    group = make_group([p])
    return Family.from_values(
        group,
        [[0], cyclotomic_class(p, 2, 0).elements, cyclotomic_class(p, 2, 1).elements],
    )
