"""Pydantic schemas for the on-disk family catalog."""
from datetime import datetime
from typing import Optional

from pydantic import BaseModel, Field

from edfkit.schemas.family import FamilySummary


class CatalogEntry(BaseModel):
    """Index record for one stored family."""

    name: str
    file: str = Field(..., description="Document file name relative to the catalog directory")
    kind: str = Field(..., description="Verifier whose report the digest covers")
    summary: FamilySummary
    lam: Optional[int] = Field(None, alias="lambda")
    digest: str = Field(..., description="SHA-256 of the canonical verification record")
    added_at: datetime

    model_config = {"populate_by_name": True}


class CatalogIndex(BaseModel):
    """catalog/index.json"""

    format_version: int = 1
    entries: dict[str, CatalogEntry] = Field(default_factory=dict)


class CatalogStatus(BaseModel):
    """Result of re-verifying one entry."""

    name: str
    ok: bool
    detail: Optional[str] = None

    class Config:
        json_schema_extra = {
            "example": {"name": "z15", "ok": True},
        }
