"""edfkit construct {a,b,c,d,sweep}"""
import argparse

from edfkit.commands.common import add_common_options, Outcome, read_family
from edfkit.schemas.reports import ConstructionResult
from edfkit.services import constructions


def _present(result: ConstructionResult, flatten: bool) -> ConstructionResult:
    if flatten and result.flattened is not None:
        return result.model_copy(update={"family": result.flattened, "flattened": None})
    return result


def run(args: argparse.Namespace) -> Outcome:
    which = args.construction
    if which == "a":
        result = constructions.construct_a(args.q)
    elif which == "b":
        pdf = read_family(args.pdf) if args.pdf else None
        result = constructions.construct_b(args.n1, pdf)
    elif which == "c":
        result = constructions.construct_c(args.q)
    elif which == "d":
        result = constructions.construct_d(read_family(args.pdf, args.builtin), args.k, args.t)
    else:
        results = constructions.sweep(args.kind, args.max_q)
        return Outcome([
            {
                "construction": r.construction,
                **r.parameters,
                "lambda": r.verified.lam,
                "predicted": r.predicted.lam,
                "floor": r.lambda_floor,
                "optimal": r.optimal_certificate,
                **{kind: holds for kind, holds in (r.taxonomy or {}).items()},
            }
            for r in results
        ])
    return Outcome(_present(result, args.flatten))


def register(subparsers) -> None:
    parser = add_common_options(subparsers.add_parser("construct", help="Build and re-verify an explicit construction"))
    kinds = parser.add_subparsers(dest="construction", required=True)

    a = add_common_options(kinds.add_parser("a", help="Optimal BSWEDF over Z_2 x F_q, q = 4k+1, k odd"))
    a.add_argument("--q", type=int, required=True)

    b = add_common_options(kinds.add_parser("b", help="Optimal BSWEDF over Z_2 x G from a PDF {{0},E1,E2}"))
    b.add_argument("--n1", type=int, required=True)
    b.add_argument("--pdf", help="PDF document; defaults to the quadratic-residue PDF of Z_n1")

    c = add_common_options(kinds.add_parser("c", help="Optimal BSWEDF over Z_3 x F_q, q = 4k+1, k odd"))
    c.add_argument("--q", type=int, required=True)

    d = add_common_options(kinds.add_parser("d", help="Cyclic SWEDF from a PDF ending in Z_{k-1} x {0}"))
    source = d.add_mutually_exclusive_group(required=True)
    source.add_argument("--pdf", help="PDF document over Z_n or Z_{k-1} x Z_{tk+1}")
    source.add_argument("--builtin", help="Built-in PDF name, e.g. z15")
    d.add_argument("--k", type=int, required=True)
    d.add_argument("--t", type=int, required=True)

    sweep = add_common_options(kinds.add_parser("sweep", help="Reproduce a construction for every admissible prime"))
    sweep.add_argument("--kind", choices=("a", "b", "c"), required=True)
    sweep.add_argument("--max-q", type=int, required=True)

    parser.set_defaults(handler=run)
