"""edfkit bound --n N --m M (--a A | --K k1,...,km)"""
import argparse

from edfkit.commands.common import add_common_options, Outcome, int_list
from edfkit.core.errors import InvalidInput
from edfkit.services.bounds import improved_bound


def run(args: argparse.Namespace) -> Outcome:
    if args.a is None and args.K is None:
        raise InvalidInput("give --a, --K or both")
    a = args.a if args.a is not None else sum(args.K)
    cap = a if args.allow_large else None
    return Outcome(improved_bound(args.n, args.m, a, K=args.K, cap=cap))


def register(subparsers) -> None:
    parser = add_common_options(subparsers.add_parser("bound", help="Closed-form lower bounds on lambda and rho"))
    parser.add_argument("--n", type=int, required=True, help="Group order")
    parser.add_argument("--m", type=int, required=True, help="Number of blocks")
    parser.add_argument("--a", type=int, help="Total size of the blocks")
    parser.add_argument("--K", type=int_list, help="Block sizes, e.g. 1,1,3")
    parser.add_argument(
        "--allow-large", action="store_true", help="Enumerate partitions beyond the configured cap"
    )
    parser.set_defaults(handler=run)
