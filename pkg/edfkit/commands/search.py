"""edfkit search --n N --m M (--K k1,...,km | --a A) [--budget NODES] [--gap]"""
import argparse

from edfkit.commands.common import add_common_options, Outcome, int_list
from edfkit.core.errors import EXIT_FALSE, EXIT_OK, InvalidInput
from edfkit.services.search import SearchService


def run(args: argparse.Namespace) -> Outcome:
    service = SearchService(budget=args.budget, progress=args.progress or None)
    if args.gap:
        if args.K is None:
            raise InvalidInput("--gap needs --K")
        return Outcome(service.rho_gap(args.n, args.m, args.K))
    if args.K is not None:
        result = service.min_lambda_search(args.n, args.m, args.K)
    elif args.a is not None:
        result = service.strongly_optimal_search(args.n, args.m, args.a)
    else:
        raise InvalidInput("give --K or --a")
    found = result.exhausted and result.witness is not None
    return Outcome(result, EXIT_OK if found else EXIT_FALSE)


def register(subparsers) -> None:
    parser = add_common_options(subparsers.add_parser("search", help="Exhaustive search for optimal BSWEDFs over Z_n"))
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument("--m", type=int, required=True)
    scope = parser.add_mutually_exclusive_group()
    scope.add_argument("--K", type=int_list, help="Fixed block sizes")
    scope.add_argument("--a", type=int, help="Total size; searches every size profile")
    parser.add_argument("--budget", type=int, help="Node budget")
    parser.add_argument("--gap", action="store_true", help="Report rho_(n,m,K) - rho_(n,m,a)")
    parser.add_argument("--progress", action="store_true", help="Progress bars on stderr")
    parser.set_defaults(handler=run)
