"""
cli/commands/hilbert_kunz.py — ``hk``, ``hk-groebner``, ``hk-hypersurface`` and ``estimate``.
"""

import argparse
from typing import Any, Dict, List, Optional

from cli.commands import e_range, emit, exponents, positive_int, prime
from cli.loaders import load_divisor, load_ideal, load_monomial_ideal, load_polynomial, load_ring, load_samples
from cli.output import class_json, estimate_json, samples_json, table
from models.hilbert_kunz import HKEstimate, HKSample
from models.polynomial import MonomialOrder
from services.groebner import hk_length_groebner, hk_length_hypersurface
from services.hilbert_kunz import estimate_ehk_beta, hk_samples_divisorial, hk_samples_toric
from services.toric_geometry import divisor_class
from utils.errors import InputError
from utils.numbers import frobenius_q


def _report(
    args: argparse.Namespace,
    d: Optional[int],
    p: Optional[int],
    samples: List[HKSample],
    extra: Optional[Dict[str, Any]] = None,
) -> int:
    """Samples table, plus the two-point estimates when the dimension is known."""
    estimate: Optional[HKEstimate] = estimate_ehk_beta(samples, d) if d and len(samples) >= 2 else None
    payload = {"d": d, "p": p, **(extra or {}), "samples": samples_json(samples)}
    if estimate is not None:
        payload["estimate"] = estimate_json(estimate)

    def render() -> str:
        text = table(["e", "q", "length"], [(s.e, s.q, s.length) for s in samples])
        if estimate is not None:
            pairs = [(f"{pr.e_low}..{pr.e_high}", pr.a, pr.b, f"{float(pr.b):.6f}") for pr in estimate.pairs]
            text += "\n\n" + table(["pair", "e_HK estimate", "beta estimate", "beta (decimal)"], pairs)
        return text

    emit(args, payload, render)
    return 0


# ── Handlers ───────────────────────────────────────────────────────────────────

def hk(args: argparse.Namespace) -> int:
    ring = load_ring(args.ring)
    ideal = load_monomial_ideal(ring, args.ideal)
    options = {"budget": args.budget, "k_max": args.k_max}
    if args.divisor is None:
        samples = hk_samples_toric(ideal, args.p, exponents(args), **options)
        return _report(args, ring.dimension, args.p, samples)

    divisor = load_divisor(ring, args.divisor)
    samples = hk_samples_divisorial(ideal, divisor, args.p, exponents(args), **options)
    extra = {
        "divisor": list(divisor.coefficients),
        "divisor_class": class_json(divisor_class(ring.cone, divisor)),
    }
    return _report(args, ring.dimension, args.p, samples, extra)


def hk_groebner(args: argparse.Namespace) -> int:
    ring_ideal = load_ideal(args.ideal)
    power_of = load_ideal(args.frobenius_ideal) if args.frobenius_ideal else None
    samples = [
        HKSample(e=e, q=frobenius_q(ring_ideal.p, e), length=hk_length_groebner(ring_ideal, e, power_of, args.order))
        for e in exponents(args)
    ]
    return _report(args, args.d, ring_ideal.p, samples)


def hk_hypersurface(args: argparse.Namespace) -> int:
    f = load_polynomial(args.poly)
    p = args.p if args.p is not None else f.p
    if p != f.p:
        raise InputError(f"--p {p} does not match the polynomial's characteristic {f.p}.")
    samples = [
        HKSample(e=e, q=frobenius_q(p, e), length=hk_length_hypersurface(f, p, e, cap=args.cap, workers=args.workers))
        for e in exponents(args)
    ]
    return _report(args, f.n - 1, p, samples)


def estimate(args: argparse.Namespace) -> int:
    d, samples = load_samples(args.samples, args.d)
    result = estimate_ehk_beta(samples, d)
    payload = {"d": d, "samples": samples_json(samples), "estimate": estimate_json(result)}

    def render() -> str:
        rows = [(f"{pr.e_low}..{pr.e_high}", pr.q_low, pr.a, pr.b) for pr in result.pairs]
        residuals = ", ".join(f"e={e}: {r}" for e, r in result.residuals)
        return table(["pair", "q", "a", "b"], rows) + f"\n\nresiduals: {residuals}"

    emit(args, payload, render)
    return 0


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("hk", parents=[common], help="HK lengths over a semigroup ring (lattice engine).")
    parser.add_argument("--ring", required=True, help="Ring JSON with semigroup_generators (and optionally the cone).")
    parser.add_argument("--ideal", default="maximal", help="'maximal' or a JSON list of lattice points.")
    parser.add_argument(
        "--divisor", default=None,
        help="JSON list of one coefficient per ray: lengths of O(D) / I^[q] O(D) instead of A / I^[q].",
    )
    parser.add_argument("--p", type=prime, required=True)
    parser.add_argument("--e", type=e_range, default=(1, 1), help="e or e_min..e_max.")
    parser.add_argument("--k-max", type=positive_int, default=None, help="Bound of the m-primary certificate.")
    parser.set_defaults(handler=hk)

    parser = subparsers.add_parser("hk-groebner", parents=[common], help="dim F_p[x]/(J + I^[q]) by Gröbner bases.")
    parser.add_argument("--ideal", required=True, help="Ideal JSON of the defining ideal J.")
    parser.add_argument("--frobenius-ideal", default=None, help="Ideal JSON of I (default: the variables).")
    parser.add_argument("--e", type=e_range, default=(1, 1))
    parser.add_argument(
        "--order", type=MonomialOrder, default=MonomialOrder.GREVLEX, choices=list(MonomialOrder),
        metavar="{grevlex,grlex,lex}", help="Monomial order.",
    )
    parser.add_argument("--d", type=positive_int, default=None, help="Krull dimension for the estimate.")
    parser.set_defaults(handler=hk_groebner)

    parser = subparsers.add_parser("hk-hypersurface", parents=[common], help="HK lengths of F_p[x]/(f) by rank.")
    parser.add_argument("--poly", required=True, help="Polynomial JSON (terms, or an ideal with one polynomial).")
    parser.add_argument("--p", type=prime, default=None, help="Defaults to the polynomial's characteristic.")
    parser.add_argument("--e", type=e_range, default=(1, 1))
    parser.add_argument("--cap", type=positive_int, default=None, help="Largest monomial box q^n to accept.")
    parser.set_defaults(handler=hk_hypersurface)

    parser = subparsers.add_parser("estimate", parents=[common], help="Two-point e_HK / beta estimates from samples.")
    parser.add_argument("--samples", required=True, help="Samples JSON (as emitted by hk).")
    parser.add_argument("--d", type=positive_int, default=None, help="Overrides the dimension stored in the file.")
    parser.set_defaults(handler=estimate)
