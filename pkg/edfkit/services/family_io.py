"""
Reading and writing FamilyDocument JSON.

Validation happens in two layers: pydantic checks the document shape, then
Family checks group membership, duplicates and disjointness.
"""
import json
import logging
from pathlib import Path
from typing import Optional, Sequence, Union

from pydantic import ValidationError

from edfkit.core.errors import EdfkitError, ParseError
from edfkit.core.groups import make_group
from edfkit.models.family import Family
from edfkit.schemas.family import FORMAT_VERSION, FamilyDocument

logger = logging.getLogger(__name__)


def _field_path(loc: Sequence[Union[str, int]]) -> str:
    return ".".join(str(part) for part in loc) or "<root>"


def parse_document(text: str) -> FamilyDocument:
    """
    Raises:
        ParseError: with the line/column of a JSON syntax error or the field
            path of a schema violation
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(
            f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}",
            {"line": e.lineno, "column": e.colno},
        )
    try:
        doc = FamilyDocument.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        path = _field_path(first["loc"])
        raise ParseError(f"field {path}: {first['msg']}", {"field": path})
    if doc.format_version != FORMAT_VERSION:
        raise ParseError(
            f"unsupported format_version {doc.format_version}", {"field": "format_version"}
        )
    return doc


def family_from_document(doc: FamilyDocument) -> Family:
    """Build the Family; element errors carry their block.element field path."""
    group = make_group(doc.group.factors)
    blocks = []
    for i, block in enumerate(doc.blocks):
        elements = []
        for j, value in enumerate(block):
            try:
                elements.append(group.element(value, strict=True))
            except EdfkitError as e:
                raise ParseError(f"field blocks.{i}.{j}: {e.detail}", {"field": f"blocks.{i}.{j}"})
        blocks.append(tuple(elements))
    return Family(group, tuple(blocks))


def parse_family(text: str) -> Family:
    """Parse FamilyDocument JSON into a validated Family."""
    return family_from_document(parse_document(text))


def to_document(family: Family, metadata: Optional[dict] = None) -> FamilyDocument:
    return FamilyDocument(
        group={"factors": list(family.group.factors)},
        blocks=family.to_values(),
        metadata=metadata or {},
    )


def render_family(family: Family, metadata: Optional[dict] = None, flatten: bool = False) -> str:
    """Serialize to FamilyDocument JSON; flatten re-presents coprime products over Z_n."""
    if flatten:
        family = family.flatten()
    return to_document(family, metadata).model_dump_json(indent=2)


def load_family(path: Union[str, Path]) -> Family:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}", {"path": str(path)})
    logger.debug("loaded family document %s", path)
    return parse_family(text)


def save_family(family: Family, path: Union[str, Path], metadata: Optional[dict] = None) -> Path:
    path = Path(path)
    path.write_text(render_family(family, metadata) + "\n", encoding="utf-8")
    return path
