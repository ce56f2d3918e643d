"""edfkit cyclotomy --p P --e E [--i I] [--qr-pdf]"""
import argparse

from edfkit.commands.common import add_common_options, Outcome
from edfkit.core.cyclotomy import cyclotomic_class, cyclotomic_classes, prime_field, qr_pdf
from edfkit.services.family_io import to_document


def run(args: argparse.Namespace) -> Outcome:
    if args.qr_pdf:
        return Outcome(to_document(qr_pdf(args.p), {"source": f"quadratic residues mod {args.p}"}))
    field = prime_field(args.p)
    classes = [cyclotomic_class(args.p, args.e, args.i)] if args.i is not None \
        else cyclotomic_classes(args.p, args.e)
    return Outcome({
        "p": args.p,
        "e": args.e,
        "primitive_root": field.alpha,
        "classes": [{"i": c.i, "size": c.size, "elements": list(c.elements)} for c in classes],
    })


def register(subparsers) -> None:
    parser = add_common_options(subparsers.add_parser("cyclotomy", help="Cyclotomic classes of a prime field"))
    parser.add_argument("--p", type=int, required=True, help="Odd prime")
    parser.add_argument("--e", type=int, default=2, help="Index, dividing p - 1")
    parser.add_argument("--i", type=int, help="Single class index")
    parser.add_argument("--qr-pdf", action="store_true", help="Emit the PDF {{0}, D2_0, D2_1}")
    parser.set_defaults(handler=run)
