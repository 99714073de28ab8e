"""
cli/commands/groups.py — ``clgroup`` and ``canonical``.
"""

import argparse

from cli.commands import emit
from cli.loaders import load_cone, load_fan
from cli.output import class_json, class_text, group_json, source_json, table, tau_json
from models.toric import RayConfiguration
from services.frobenius import tau_top
from services.toric_geometry import (
    canonical_class,
    canonical_divisor,
    class_group,
    divisor_class,
    is_q_gorenstein,
    prime_divisor,
)


def load_source(args: argparse.Namespace) -> RayConfiguration:
    return load_cone(args.cone) if args.cone else load_fan(args.fan)


def add_source(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--cone", help="Cone JSON (file or inline); semigroup generators are dualized.")
    group.add_argument("--fan", help="Smooth fan JSON (file or inline).")


# ── Handlers ───────────────────────────────────────────────────────────────────

def clgroup(args: argparse.Namespace) -> int:
    cfg = load_source(args)
    group = class_group(cfg)
    ray_classes = [divisor_class(cfg, prime_divisor(cfg, i)) for i in range(cfg.ray_count)]
    payload = source_json(cfg)
    payload["class_group"] = group_json(group)
    payload["ray_classes"] = [class_json(c) for c in ray_classes]

    def render() -> str:
        rows = [(i, list(v), class_text(c)) for i, (v, c) in enumerate(zip(cfg.rays, ray_classes))]
        return f"Cl = {group.describe()}\n\n" + table(["rho", "ray", "class of D_rho"], rows)

    emit(args, payload, render)
    return 0


def canonical(args: argparse.Namespace) -> int:
    cfg = load_source(args)
    k = canonical_class(cfg)
    gorenstein = is_q_gorenstein(cfg)
    tau = tau_top(cfg, k * 0, 1)
    payload = source_json(cfg)
    payload.update({
        "canonical_divisor": list(canonical_divisor(cfg).coefficients),
        "canonical_class": class_json(k),
        "q_gorenstein": gorenstein,
        "tau_of_ring": tau_json(tau),
    })

    def render() -> str:
        return table(
            ["K", "class", "Q-Gorenstein"],
            [(list(canonical_divisor(cfg).coefficients), class_text(k), "yes" if gorenstein else "no")],
        )

    emit(args, payload, render)
    return 0


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("clgroup", parents=[common], help="Divisor class group of a cone or fan.")
    add_source(parser)
    parser.set_defaults(handler=clgroup)

    parser = subparsers.add_parser("canonical", parents=[common], help="Canonical divisor and its class.")
    add_source(parser)
    parser.set_defaults(handler=canonical)
