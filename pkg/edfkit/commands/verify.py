"""edfkit verify --kind KIND FILE"""
import argparse

from edfkit.commands.common import add_common_options, Outcome, read_family
from edfkit.core.errors import EXIT_FALSE, EXIT_OK
from edfkit.services import verification

EXTRA_KINDS = ("all", "summary", "implications")


def run(args: argparse.Namespace) -> Outcome:
    family = read_family(args.family, args.builtin)
    if args.flatten:
        family = family.flatten()
    if args.kind == "summary":
        return Outcome(verification.family_summary(family))
    if args.kind == "implications":
        checks = verification.implication_checks(family)
        return Outcome(checks, EXIT_OK if all(checks.values()) else EXIT_FALSE)
    if args.kind == "all":
        reports = verification.classify_all(family)
        return Outcome(reports)
    report = verification.verify(family, args.kind, args.bound)
    return Outcome(report, EXIT_OK if report.holds else EXIT_FALSE)


def register(subparsers) -> None:
    parser = add_common_options(subparsers.add_parser("verify", help="Run a verifier from the external-difference taxonomy"))
    parser.add_argument("family", nargs="?", help="FamilyDocument JSON file")
    parser.add_argument("--builtin", help="Use a built-in PDF instead of a file")
    parser.add_argument(
        "--kind", required=True, choices=sorted((*verification.VERIFIER_KINDS, *EXTRA_KINDS))
    )
    parser.add_argument(
        "--bound", type=int, nargs="+",
        help="lambda for bedf/bswedf, one lambda_i per block for bgsedf",
    )
    parser.set_defaults(handler=run)
