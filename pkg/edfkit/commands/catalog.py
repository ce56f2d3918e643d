"""edfkit catalog {add,list,show,verify-all}"""
import argparse

from edfkit.commands.common import add_common_options, Outcome, read_family
from edfkit.services.catalog import CatalogStore, require_clean
from edfkit.services.family_io import to_document


def run(args: argparse.Namespace) -> Outcome:
    store = CatalogStore(args.catalog_dir)
    if args.action == "add":
        family = read_family(args.family, args.builtin)
        metadata = {"source": args.builtin or args.family}
        return Outcome(store.add(args.name, family, kind=args.kind, metadata=metadata,
                                 replace=args.replace))
    if args.action == "list":
        return Outcome([
            {"name": e.name, "kind": e.kind, "n": e.summary.n, "m": e.summary.m,
             "K": e.summary.K, "lambda": e.lam}
            for e in store.list_entries()
        ])
    if args.action == "show":
        return Outcome(to_document(store.get(args.name)))
    statuses = store.verify_all()
    require_clean(statuses)
    return Outcome(statuses)


def register(subparsers) -> None:
    parser = add_common_options(subparsers.add_parser("catalog", help="Store and re-verify families on disk"))
    parser.add_argument("--catalog-dir", help="Catalog directory (default from settings)")
    actions = parser.add_subparsers(dest="action", required=True)

    add = add_common_options(actions.add_parser("add", help="Verify a family and store it"))
    add.add_argument("name")
    add.add_argument("family", nargs="?", help="FamilyDocument JSON file")
    add.add_argument("--builtin", help="Store a built-in PDF, e.g. z15")
    add.add_argument("--kind", default="bswedf", help="Verifier the digest records (default bswedf)")
    add.add_argument("--replace", action="store_true")

    add_common_options(actions.add_parser("list", help="List stored entries"))

    show = add_common_options(actions.add_parser("show", help="Print a stored family after re-verifying it"))
    show.add_argument("name")

    add_common_options(actions.add_parser("verify-all", help="Re-verify every entry against its digest"))
    parser.set_defaults(handler=run)
