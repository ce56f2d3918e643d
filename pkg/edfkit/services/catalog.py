"""
Catalog of verified families on disk.

Layout: <catalog_dir>/<name>.json holds a FamilyDocument and
<catalog_dir>/index.json maps names to their parameters and verification
digest. Entries are re-verified before they are stored and whenever the
catalog is checked.
"""
import json
import logging
import re
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from pydantic import ValidationError

from edfkit.config import get_settings
from edfkit.core.digest import digest_payload, verify_digest
from edfkit.core.errors import CatalogCorrupt, EdfkitError, InvalidInput, PreconditionUnmet
from edfkit.models.family import Family
from edfkit.schemas.catalog import CatalogEntry, CatalogIndex, CatalogStatus
from edfkit.services.family_io import load_family, save_family
from edfkit.services.verification import VERIFIER_KINDS, family_summary, verify

logger = logging.getLogger(__name__)

INDEX_FILE = "index.json"
_NAME = re.compile(r"^[A-Za-z0-9][A-Za-z0-9_.-]*$")


def verification_record(family: Family, kind: str) -> dict:
    """The payload a digest covers: the canonical family plus its verification report."""
    canonical = family.canonical_form()
    report = verify(family, kind)
    return {
        "group": list(family.group.factors),
        "blocks": canonical.to_values(),
        "report": json.loads(report.to_json(exclude={"witness", "violators", "counts", "n_table"})),
    }


class CatalogStore:
    """Service for storing and re-verifying families in a catalog directory."""

    def __init__(self, directory: Optional[str] = None):
        self.directory = Path(directory or get_settings().catalog_dir)

    @property
    def index_path(self) -> Path:
        return self.directory / INDEX_FILE

    def _load_index(self) -> CatalogIndex:
        if not self.index_path.exists():
            return CatalogIndex()
        try:
            return CatalogIndex.model_validate_json(self.index_path.read_text(encoding="utf-8"))
        except ValidationError as e:
            raise CatalogCorrupt(f"{self.index_path} is unreadable: {e.errors()[0]['msg']}")

    def _save_index(self, index: CatalogIndex) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        self.index_path.write_text(
            index.model_dump_json(indent=2, by_alias=True) + "\n", encoding="utf-8"
        )

    def add(
        self,
        name: str,
        family: Family,
        kind: str = "bswedf",
        metadata: Optional[dict] = None,
        replace: bool = False,
    ) -> CatalogEntry:
        """
        Verify a family and store it under name.

        Args:
            name: Entry name, also the document file stem
            family: The family to store
            kind: Verifier recorded in the digest; the family must satisfy it
            metadata: Provenance written into the document
            replace: Overwrite an existing entry

        Returns:
            The index record

        Raises:
            InvalidInput: bad name, unknown kind or duplicate entry
            PreconditionUnmet: if the family fails the verifier
        """
        if not _NAME.match(name) or name == Path(INDEX_FILE).stem:
            raise InvalidInput(f"invalid catalog entry name {name!r}")
        if kind not in VERIFIER_KINDS or kind in ("bedf", "bgsedf"):
            raise InvalidInput(f"catalog entries cannot be keyed on kind {kind!r}")
        index = self._load_index()
        if name in index.entries and not replace:
            raise InvalidInput(f"catalog entry {name!r} already exists")

        report = verify(family, kind)
        if not report.holds:
            raise PreconditionUnmet(
                f"{name}: {kind} verification fails ({report.reason})", {"entry": name}
            )
        file_name = f"{name}.json"
        self.directory.mkdir(parents=True, exist_ok=True)
        save_family(family, self.directory / file_name, metadata)
        entry = CatalogEntry(
            name=name,
            file=file_name,
            kind=kind,
            summary=family_summary(family),
            lam=report.lam,
            digest=digest_payload(verification_record(family, kind)),
            added_at=datetime.now(timezone.utc),
        )
        index.entries[name] = entry
        self._save_index(index)
        logger.info("catalog entry %s stored (%s, lambda=%s)", name, kind, report.lam)
        return entry

    def list_entries(self) -> list[CatalogEntry]:
        entries = self._load_index().entries
        return [entries[name] for name in sorted(entries)]

    def _check(self, entry: CatalogEntry) -> Family:
        try:
            family = load_family(self.directory / entry.file)
        except EdfkitError as e:
            raise CatalogCorrupt(f"entry {entry.name}: {e}", {"entry": entry.name})
        if not verify_digest(verification_record(family, entry.kind), entry.digest):
            raise CatalogCorrupt(
                f"entry {entry.name}: verification digest does not match the index",
                {"entry": entry.name},
            )
        return family

    def get(self, name: str) -> Family:
        """Load an entry, re-verifying it against its digest."""
        index = self._load_index()
        if name not in index.entries:
            raise InvalidInput(f"no catalog entry named {name!r}")
        return self._check(index.entries[name])

    def verify_all(self) -> list[CatalogStatus]:
        """Re-verify every entry; drift is reported per entry, not raised."""
        statuses = []
        for entry in self.list_entries():
            try:
                self._check(entry)
                statuses.append(CatalogStatus(name=entry.name, ok=True))
            except CatalogCorrupt as e:
                logger.warning("catalog drift: %s", e.detail)
                statuses.append(CatalogStatus(name=entry.name, ok=False, detail=e.detail))
        return statuses


def require_clean(statuses: list[CatalogStatus]) -> None:
    """
    Raises:
        CatalogCorrupt: naming every entry that failed re-verification
    """
    bad = [s.name for s in statuses if not s.ok]
    if bad:
        raise CatalogCorrupt(f"entries failed re-verification: {', '.join(bad)}", {"entries": bad})


_catalog_store: Optional[CatalogStore] = None


def get_catalog_store() -> CatalogStore:
    """Get the catalog store for the configured directory."""
    global _catalog_store
    if _catalog_store is None or _catalog_store.directory != Path(get_settings().catalog_dir):
        _catalog_store = CatalogStore()
    return _catalog_store
