"""
cli/commands/frobenius.py — ``frobdec``, ``verify-main``, ``verify-analogue`` and ``chern``.
"""

import argparse
from typing import List

from cli.commands import e_range, emit, exponents, orientation, positive_int, prime
from cli.commands.groups import add_source, load_source
from cli.loaders import load_cone, load_fan
from cli.output import (
    chern_json,
    class_text,
    decomposition_json,
    report_json,
    source_json,
    table,
    tau_json,
)
from models.frobenius import FrobeniusDecomposition
from models.toric import FanData
from services.chern import (
    c1_projective_space,
    c2_projective_space,
    euler_characteristic_projective,
    summand_degrees,
    total_chern_class,
)
from services.frobenius import (
    class_sum,
    frobenius_decompose_affine,
    frobenius_decompose_projective,
    tau_top,
    verify_theorem_analogue,
    verify_theorem_main,
)
from services.toric_geometry import projective_space_fan
from utils.numbers import to_decimal


def _summand_rows(dec: FrobeniusDecomposition) -> List[tuple]:
    return [(dec.e, class_text(s.divisor_class), s.multiplicity, list(s.witness_s)) for s in dec.summands]


# ── Handlers ───────────────────────────────────────────────────────────────────

def frobdec(args: argparse.Namespace) -> int:
    cfg = load_source(args)
    decompose = frobenius_decompose_projective if isinstance(cfg, FanData) else frobenius_decompose_affine
    decs = [decompose(cfg, args.p, e, budget=args.budget, workers=args.workers) for e in exponents(args)]
    payload = source_json(cfg)
    payload["decompositions"] = [decomposition_json(dec) for dec in decs]

    def render() -> str:
        rows = [row for dec in decs for row in _summand_rows(dec)]
        sums = "\n".join(f"e={dec.e}: rank {dec.rank}, class sum {class_text(class_sum(dec))}" for dec in decs)
        return table(["e", "class", "multiplicity", "witness s"], rows) + "\n\n" + sums

    emit(args, payload, render)
    return 0


def _verify(args: argparse.Namespace, cfg, decompose, verify) -> int:
    results = []
    for e in exponents(args):
        dec = decompose(cfg, args.p, e, budget=args.budget, workers=args.workers)
        report = verify(cfg, args.p, e, orientation=args.orientation, decomposition=dec)
        results.append((dec, report))

    payload = source_json(cfg)
    payload["results"] = []
    for dec, report in results:
        entry = decomposition_json(dec)
        entry.pop("cone", None)
        entry.pop("fan", None)
        entry["report"] = report_json(report)
        entry["tau"] = tau_json(tau_top(cfg, class_sum(dec), dec.rank))
        payload["results"].append(entry)

    def render() -> str:
        rows = [
            (r.e, class_text(r.lhs), class_text(r.rhs), class_text(r.difference),
             r.orientation_used.value, "pass" if r.passed else "FAIL")
            for _, r in results
        ]
        return table(["e", "2 * class sum", "(q^d - q^(d-1)) K", "difference", "orientation", "result"], rows)

    emit(args, payload, render)
    return 0 if all(r.passed for _, r in results) else 1


def verify_main(args: argparse.Namespace) -> int:
    return _verify(args, load_cone(args.cone), frobenius_decompose_affine, verify_theorem_main)


def verify_analogue(args: argparse.Namespace) -> int:
    return _verify(args, load_fan(args.fan), frobenius_decompose_projective, verify_theorem_analogue)


def chern(args: argparse.Namespace) -> int:
    n = args.n
    results = []
    for e in exponents(args):
        dec = frobenius_decompose_projective(projective_space_fan(n), args.p, e, budget=args.budget)
        degrees = summand_degrees(dec)
        c1 = c1_projective_space(n, args.p, e, decomposition=dec)
        c2 = c2_projective_space(n, args.p, e, decomposition=dec) if n >= 2 else None
        chi = euler_characteristic_projective(dec)
        results.append((e, degrees, total_chern_class(degrees, n), c1, c2, chi))

    ok = all(c1.agrees and (c2 is None or c2.agrees) and chi == 1 for _, _, _, c1, c2, chi in results)
    payload = {
        "n": n,
        "p": args.p,
        "results": [
            {
                "e": e,
                "degrees": {str(a): to_decimal(m) for a, m in degrees.items()},
                "total_chern_class": [to_decimal(c) for c in total],
                "c1": chern_json(c1),
                "c2": chern_json(c2) if c2 is not None else None,
                "euler_characteristic": to_decimal(chi),
            }
            for e, degrees, total, c1, c2, chi in results
        ],
        "passed": ok,
    }

    def render() -> str:
        rows = [
            (e, dict(degrees), c1.from_decomposition, c1.closed_form,
             c2.from_decomposition if c2 else "-", c2.closed_form if c2 else "-", chi)
            for e, degrees, _, c1, c2, chi in results
        ]
        return table(["e", "degrees", "c1", "c1 closed", "c2", "c2 closed", "chi"], rows)

    emit(args, payload, render)
    return 0 if ok else 1


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("frobdec", parents=[common], help="Decompose F^e_* O into rank-one summands.")
    add_source(parser)
    _add_pe(parser)
    parser.set_defaults(handler=frobdec)

    parser = subparsers.add_parser("verify-main", parents=[common], help="Check the class identity on a cone.")
    parser.add_argument("--cone", required=True, help="Cone JSON (file or inline).")
    _add_pe(parser)
    _add_orientation(parser)
    parser.set_defaults(handler=verify_main)

    parser = subparsers.add_parser("verify-analogue", parents=[common], help="Check the c_1 identity on a smooth fan.")
    parser.add_argument("--fan", required=True, help="Smooth complete fan JSON (file or inline).")
    _add_pe(parser)
    _add_orientation(parser)
    parser.set_defaults(handler=verify_analogue)

    parser = subparsers.add_parser("chern", parents=[common], help="Chern data of F^e_* O on P^n.")
    parser.add_argument("--n", type=positive_int, required=True, help="Dimension of projective space.")
    _add_pe(parser)
    parser.set_defaults(handler=chern)


def _add_pe(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p", type=prime, required=True, help="Characteristic (prime).")
    parser.add_argument("--e", type=e_range, default=(1, 1), help="Frobenius exponent e or range e_min..e_max.")


def _add_orientation(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--orientation", type=orientation, default=None, metavar="{auto,as-stated,sign-flipped}",
        help="Summand-to-class orientation (default: auto).",
    )
