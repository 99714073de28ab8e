"""
cli/commands/corpus.py — ``corpus``: randomized check of the class identity.
"""

import argparse

from cli.commands import emit, int_list, positive_int
from cli.output import corpus_json, table
from services.corpus import run_corpus


def corpus(args: argparse.Namespace) -> int:
    report = run_corpus(
        seed=args.seed,
        count=args.count,
        dims=args.dims,
        primes=args.primes,
        e_max=args.e_max,
        budget=args.budget,
        workers=args.workers,
    )

    def render() -> str:
        rows = [
            (entry.cone_index, entry.cone.lattice_rank, entry.cone.ray_count, entry.p, entry.e,
             "pass" if entry.report.passed else "FAIL", "ok" if entry.tau_consistent else "FAIL")
            for entry in report.entries
        ]
        orientation = report.orientation.value if report.orientation else "none"
        summary = (
            f"{len(report.entries)} cases, {len(report.failures)} failures, "
            f"{len(report.skipped)} skipped over budget; orientation: {orientation}"
        )
        return table(["cone", "d", "rays", "p", "e", "class identity", "tau"], rows) + "\n\n" + summary

    emit(args, corpus_json(report), render)
    return 0 if report.passed else 1


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("corpus", parents=[common], help="Verify the class identity on random cones.")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--count", type=int, default=20, help="Number of random cones (0 allowed).")
    parser.add_argument("--dims", type=int_list, default=[2, 3, 4], help="Comma-separated cone dimensions.")
    parser.add_argument("--primes", type=int_list, default=[2, 3, 5], help="Comma-separated primes.")
    parser.add_argument("--e-max", type=positive_int, default=2)
    parser.set_defaults(handler=corpus)
