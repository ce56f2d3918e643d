"""Shared schema types: exact rationals and element encodings."""
from fractions import Fraction
from typing import Annotated, Any, Union

from pydantic import BeforeValidator, PlainSerializer, WithJsonSchema


def _to_fraction(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError("rationals must be given as 'p/q' strings or integers, never floats")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise ValueError(f"cannot read {value!r} as a rational")


# Serialized as "p/q" (or "p" for integers); floats are rejected on input.
Rational = Annotated[
    Fraction,
    BeforeValidator(_to_fraction),
    PlainSerializer(lambda f: str(f), return_type=str),
    WithJsonSchema({"type": "string", "pattern": r"^-?\d+(/\d+)?$"}),
]

# Bare integer for single-factor groups, residue array for products.
ElementJson = Union[int, list[int]]
