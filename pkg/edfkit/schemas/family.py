"""Pydantic schemas for the family interchange format."""
from typing import Any

from pydantic import BaseModel, Field, field_validator

from edfkit.schemas.common import ElementJson

FORMAT_VERSION = 1


class GroupDocument(BaseModel):
    """Group fragment: a direct product of cyclic groups."""

    factors: list[int] = Field(..., min_length=1, description="Cyclic factor orders, each >= 2")

    @field_validator("factors")
    @classmethod
    def factors_at_least_two(cls, value: list[int]) -> list[int]:
        for n in value:
            if n < 2:
                raise ValueError(f"cyclic factor {n} must be >= 2")
        return value


class FamilyDocument(BaseModel):
    """Schema for a family of blocks stored on disk or exchanged on the CLI."""

    format_version: int = Field(default=FORMAT_VERSION, description="Interchange format version")
    group: GroupDocument
    blocks: list[list[ElementJson]] = Field(
        ...,
        min_length=1,
        description="Blocks as element lists; bare integers for cyclic groups, residue arrays for products",
    )
    metadata: dict[str, Any] = Field(
        default_factory=dict,
        description="Free-form provenance notes (source, construction parameters)",
    )

    class Config:
        json_schema_extra = {
            "example": {
                "format_version": 1,
                "group": {"factors": [10]},
                "blocks": [[5], [2], [0, 4, 6]],
                "metadata": {"source": "weak (10,3,5,4/9)-AMD code"},
            }
        }


class FamilySummary(BaseModel):
    """Header describing a family's parameters."""

    factors: list[int]
    n: int
    m: int
    K: list[int] = Field(..., description="Block sizes in block order")
    sorted_K: list[int] = Field(..., description="Block sizes in non-decreasing order")
    a: int = Field(..., description="Sum of block sizes")
    k_tilde: int = Field(..., description="lcm of block sizes")
    disjoint: bool = Field(True, description="Blocks are pairwise disjoint; a Family always is")
    is_partition: bool = Field(..., description="Blocks cover the whole group")
