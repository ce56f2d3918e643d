#!/usr/bin/env python3
"""
Script para cargar el catálogo inicial de familias verificadas.
Ejecutar: python scripts/seed_catalog.py [--catalog-dir catalog] [--max-prime 31]
"""
import argparse
import sys
from pathlib import Path

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from edfkit.core.errors import EdfkitError
from edfkit.services.catalog import CatalogStore
from edfkit.services.constructions import builtin_pdf_catalog
from edfkit.services.family_io import load_family


FAMILIES_PATH = Path(__file__).parent.parent / "families"


def seed_catalog(catalog_dir: str, max_prime: int, replace: bool) -> int:
    """Store the built-in PDFs and the seed documents; returns the number of failures."""
    store = CatalogStore(catalog_dir)
    print(f"Loading catalog into: {store.directory}")
    failures = 0

    print("\nBuilt-in PDFs")
    for name, family in builtin_pdf_catalog(max_prime):
        try:
            entry = store.add(name, family, kind="pdf", metadata={"source": "built-in"}, replace=replace)
            print(f"  ✓ {name} (lambda={entry.lam})")
        except EdfkitError as e:
            failures += 1
            print(f"  ✗ {name}: {e}")

    print(f"\nSeed documents from {FAMILIES_PATH.name}/")
    for file_path in sorted(FAMILIES_PATH.glob("*.json")):
        name = file_path.stem.replace("_", "-")
        try:
            family = load_family(file_path)
            entry = store.add(name, family, metadata={"source_file": file_path.name}, replace=replace)
            print(f"  ✓ {name} (lambda={entry.lam})")
        except EdfkitError as e:
            failures += 1
            print(f"  ✗ {name}: {e}")

    statuses = store.verify_all()
    print(f"\n{'=' * 50}")
    print(f"Entries: {len(statuses)}, re-verified: {sum(s.ok for s in statuses)}")
    print(f"{'=' * 50}")
    return failures


def main():
    parser = argparse.ArgumentParser(description="Seed the family catalog")
    parser.add_argument("--catalog-dir", default="catalog", help="Catalog directory")
    parser.add_argument("--max-prime", type=int, default=31, help="Largest prime for qr-p PDFs")
    parser.add_argument("--replace", action="store_true", help="Overwrite existing entries")
    args = parser.parse_args()
    sys.exit(1 if seed_catalog(args.catalog_dir, args.max_prime, args.replace) else 0)


if __name__ == "__main__":
    main()
