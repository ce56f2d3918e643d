"""Helpers shared by the subcommands: argument parsing and output rendering."""
import argparse
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Union

from pydantic import BaseModel

from edfkit.core.errors import EXIT_OK, InvalidInput
from edfkit.core.groups import GroupElement
from edfkit.models.family import Family
from edfkit.services.constructions import builtin_pdf
from edfkit.services.family_io import load_family

Payload = Union[BaseModel, dict, list]


@dataclass
class Outcome:
    """What a handler returns: the payload to print and the exit code."""

    payload: Payload
    exit_code: int = EXIT_OK


def int_list(text: str) -> list[int]:
    """'1,2,2' -> [1, 2, 2]"""
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def parse_element(family: Family, text: str) -> GroupElement:
    """'3' for cyclic groups, '1,4' for products."""
    try:
        values = int_list(text)
    except argparse.ArgumentTypeError as e:
        raise InvalidInput(f"bad offset: {e}")
    if len(values) == 1 and family.group.is_cyclic_presentation:
        return family.group.element(values[0])
    return family.group.element(values)


def read_family(path: Optional[str], builtin: Optional[str] = None) -> Family:
    if builtin:
        return builtin_pdf(builtin)
    if not path:
        raise InvalidInput("a family file or --builtin name is required")
    return load_family(path)


def _plain(payload: Any) -> Any:
    if isinstance(payload, BaseModel):
        return json.loads(payload.model_dump_json(by_alias=True, exclude_none=True))
    if isinstance(payload, Fraction):
        return str(payload)
    if isinstance(payload, dict):
        return {str(k): _plain(v) for k, v in payload.items()}
    if isinstance(payload, (list, tuple)):
        return [_plain(v) for v in payload]
    return payload


def to_json(payload: Payload) -> str:
    return json.dumps(_plain(payload), indent=2, ensure_ascii=False)


def _scalar(value: Any) -> str:
    if isinstance(value, list) and all(not isinstance(v, (dict, list)) for v in value):
        return "[" + ", ".join(str(v) for v in value) + "]"
    if isinstance(value, list) and all(isinstance(v, list) for v in value):
        return " ".join("{" + ",".join(str(x) for x in v) + "}" for v in value)
    return str(value)


def _table(rows: list[dict]) -> list[str]:
    columns = list(dict.fromkeys(k for row in rows for k in row))
    cells = [[_scalar(row.get(c, "")) for c in columns] for row in rows]
    widths = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(v.ljust(w) for v, w in zip(r, widths)) for r in cells]
    return lines


def _human(value: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines: list[str] = []
    if isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
        flat = [{k: v for k, v in row.items() if not isinstance(v, dict)} for row in value]
        return [pad + line for line in _table(flat)]
    if not isinstance(value, dict):
        return [pad + _scalar(value)]
    for key, item in value.items():
        if isinstance(item, dict) or (isinstance(item, list) and item and isinstance(item[0], dict)):
            lines.append(f"{pad}{key}:")
            lines += _human(item, indent + 1)
        else:
            lines.append(f"{pad}{key}: {_scalar(item)}")
    return lines


def to_human(payload: Payload) -> str:
    """Aligned key/value lines, with lists of records rendered as tables."""
    return "\n".join(_human(_plain(payload)))


def add_common_options(parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
    """
    --human, --flatten and -v, accepted before or after the subcommand.

    Defaults are suppressed so a nested parser never overwrites a value given
    at an outer level.
    """
    parser.add_argument(
        "--human", action="store_true", default=argparse.SUPPRESS,
        help="Render tables instead of JSON",
    )
    parser.add_argument(
        "--flatten", action="store_true", default=argparse.SUPPRESS,
        help="Present coprime product groups as Z_n",
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=argparse.SUPPRESS,
        help="-v for INFO logs, -vv for DEBUG",
    )
    return parser
