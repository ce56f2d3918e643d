"""edfkit rho FILE [--delta D] [--mc TRIALS SEED] [--classify]"""
import argparse

from edfkit.commands.common import add_common_options, Outcome, parse_element, read_family
from edfkit.services import amd


def run(args: argparse.Namespace) -> Outcome:
    family = read_family(args.family, args.builtin)
    if args.flatten:
        family = family.flatten()
    if args.delta is not None:
        delta = parse_element(family, args.delta)
        payload = {"delta": delta.to_json(), "rho": amd.rho_delta(family, delta)}
        if args.mc:
            trials, seed = args.mc
            payload["monte_carlo"] = amd.monte_carlo_attack(
                family, delta, trials=trials, seed=seed, streams=args.streams
            )
        return Outcome(payload)

    profile = amd.rho_profile(family)
    update = {}
    if args.classify:
        update["classification"] = amd.classify_optimality(
            family, search_budget=args.budget, profile=profile
        )
    if args.mc:
        trials, seed = args.mc
        best = family.group.element(profile.best_deltas[0])
        update["monte_carlo"] = amd.monte_carlo_attack(
            family, best, trials=trials, seed=seed, streams=args.streams
        )
    return Outcome(profile.model_copy(update=update))


def register(subparsers) -> None:
    parser = add_common_options(subparsers.add_parser("rho", help="Exact weak AMD success probabilities of a family"))
    parser.add_argument("family", nargs="?", help="FamilyDocument JSON file")
    parser.add_argument("--builtin", help="Use a built-in PDF instead of a file")
    parser.add_argument("--delta", help="Single offset, '3' or '1,4' for products")
    parser.add_argument(
        "--mc", type=int, nargs=2, metavar=("TRIALS", "SEED"),
        help="Monte Carlo cross-check at --delta (or the best offset)",
    )
    parser.add_argument("--streams", type=int, help="Independent PRNG streams for --mc")
    parser.add_argument("--classify", action="store_true", help="Add the optimality classification")
    parser.add_argument("--budget", type=int, help="Search budget for the classification (0 disables)")
    parser.set_defaults(handler=run)
