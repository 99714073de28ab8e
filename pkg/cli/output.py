"""
cli/output.py — JSON payloads and plain-text tables.

Values that can grow without bound (lengths, multiplicities, class
coordinates, rationals) are emitted as decimal strings; structural
integers (ranks, rays, p, e) stay JSON numbers.
"""

import json
from typing import Any, Dict, List, Sequence

from models.corpus import CorpusReport
from models.frobenius import ChernComparison, FrobeniusDecomposition, TauTop, VerificationReport
from models.hilbert_kunz import HKEstimate, HKSample
from models.linalg import AbelianGroupPresentation
from models.toric import DivisorClass, FanData, RayConfiguration
from services.frobenius import class_sum
from utils.numbers import to_decimal


# ── JSON payloads ──────────────────────────────────────────────────────────────

def cone_json(cfg: RayConfiguration) -> Dict[str, Any]:
    payload: Dict[str, Any] = {"lattice_rank": cfg.lattice_rank, "rays": [list(v) for v in cfg.rays]}
    if isinstance(cfg, FanData):
        payload["maximal_cones"] = [list(c) for c in cfg.maximal_cones]
        payload["complete"] = cfg.complete
    return payload


def source_json(cfg: RayConfiguration) -> Dict[str, Any]:
    """The cone or fan under its own key, so the payload loads back as input."""
    return {"fan" if isinstance(cfg, FanData) else "cone": cone_json(cfg)}


def group_json(group: AbelianGroupPresentation) -> Dict[str, Any]:
    return {
        "description": group.describe(),
        "free_rank": group.free_rank,
        "torsion_invariants": [to_decimal(d) for d in group.torsion_invariants],
    }


def class_json(cls: DivisorClass) -> Dict[str, List[str]]:
    return {"torsion": [to_decimal(x) for x in cls.torsion], "free": [to_decimal(x) for x in cls.free]}


def class_text(cls: DivisorClass) -> str:
    parts = [str(x) for x in cls.free] + [f"{x} (tors)" for x in cls.torsion]
    return "(" + ", ".join(parts) + ")" if parts else "0"


def decomposition_json(dec: FrobeniusDecomposition) -> Dict[str, Any]:
    payload = source_json(dec.source)
    payload.update({
        "p": dec.p,
        "e": dec.e,
        "q": to_decimal(dec.q),
        "rank": to_decimal(dec.rank),
        "summands": [
            {
                "class": class_json(s.divisor_class),
                "multiplicity": to_decimal(s.multiplicity),
                "witness_s": list(s.witness_s),
                "witness_divisor": list(s.witness_divisor.coefficients),
            }
            for s in dec.summands
        ],
        "class_sum": class_json(class_sum(dec)),
    })
    return payload


def report_json(report: VerificationReport) -> Dict[str, Any]:
    return {
        "theorem": report.theorem,
        "p": report.p,
        "e": report.e,
        "lhs": class_json(report.lhs),
        "rhs": class_json(report.rhs),
        "difference": class_json(report.difference),
        "torsion_flag": report.torsion_flag,
        "passed": report.passed,
        "orientation_used": report.orientation_used.value,
    }


def tau_json(tau: TauTop) -> Dict[str, Any]:
    return {"free_part": [to_decimal(x) for x in tau.free_part], "torsion_ambiguous": tau.torsion_ambiguous}


def chern_json(result: ChernComparison) -> Dict[str, Any]:
    return {
        "n": result.n,
        "p": result.p,
        "e": result.e,
        "from_decomposition": to_decimal(result.from_decomposition),
        "closed_form": to_decimal(result.closed_form),
        "agrees": result.agrees,
    }


def samples_json(samples: Sequence[HKSample]) -> List[Dict[str, Any]]:
    return [{"e": s.e, "q": to_decimal(s.q), "length": to_decimal(s.length)} for s in samples]


def estimate_json(estimate: HKEstimate) -> Dict[str, Any]:
    return {
        "d": estimate.d,
        "pairs": [
            {"e": [pair.e_low, pair.e_high], "q": to_decimal(pair.q_low), "a": to_decimal(pair.a), "b": to_decimal(pair.b)}
            for pair in estimate.pairs
        ],
        "e_hk": to_decimal(estimate.e_hk),
        "beta": to_decimal(estimate.beta),
        "residuals": [{"e": e, "residual": to_decimal(r)} for e, r in estimate.residuals],
    }


def corpus_json(report: CorpusReport) -> Dict[str, Any]:
    return {
        "seed": report.seed,
        "cones": [cone_json(c) for c in report.cones],
        "orientation": report.orientation.value if report.orientation else None,
        "passed": report.passed,
        "cases": [
            {
                "cone": entry.cone_index,
                "p": entry.p,
                "e": entry.e,
                "passed": entry.report.passed,
                "tau_consistent": entry.tau_consistent,
            }
            for entry in report.entries
        ],
        "skipped": [{"cone": i, "p": p, "e": e} for i, p, e in report.skipped],
    }


def dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False)


# ── Tables ─────────────────────────────────────────────────────────────────────

def table(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)
