"""
cli/loaders.py — Turn JSON files or inline JSON into validated domain objects.
"""

import json
import logging
from pathlib import Path
from typing import Any, List, Optional, Tuple, Type, TypeVar

from pydantic import BaseModel, ValidationError
from sympy import integer_nthroot

from cli.schemas import (
    ConeSchema,
    DivisorSchema,
    FanSchema,
    IdealGeneratorsSchema,
    IdealSchema,
    PolynomialSchema,
    RingSchema,
    SamplesSchema,
)
from models.hilbert_kunz import HKSample, MonomialIdealSpec
from models.polynomial import PrimeFieldIdeal, PrimeFieldPoly
from models.toric import ConeData, FanData, SemigroupRingSpec, WeilDivisor
from services.hilbert_kunz import build_monomial_ideal, maximal_ideal
from services.toric_geometry import build_cone, build_fan, build_ring, dualize
from utils.errors import InputError
from utils.numbers import require_prime

logger = logging.getLogger(__name__)

S = TypeVar("S", bound=BaseModel)


def read_json(source: str) -> Any:
    """``source`` is inline JSON when it starts with '{' or '[', otherwise a file path."""
    text = source.strip()
    origin = "inline JSON"
    if not text.startswith(("{", "[")):
        path = Path(source)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"Cannot read {source}: {exc.strerror or exc}.")
        origin = str(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{origin}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}.")


def _validate(schema: Type[S], data: Any, what: str) -> S:
    try:
        return schema.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        path = ".".join(str(part) for part in first["loc"]) or "<root>"
        raise InputError(f"Invalid {what}: field '{path}': {first['msg']}.")


def _unwrap(data: Any, key: str) -> Any:
    """Accept both a bare object and one nested under ``key`` (as emitted by the CLI)."""
    if isinstance(data, dict) and isinstance(data.get(key), dict):
        return data[key]
    return data


# ── Toric inputs ───────────────────────────────────────────────────────────────

def _cone_from_schema(schema: ConeSchema) -> ConeData:
    d = schema.lattice_rank if schema.lattice_rank is not None else len(schema.rays[0])
    return build_cone(d, schema.rays)


def load_cone(source: str) -> ConeData:
    """A cone object, an object with a "cone" key, or semigroup generators to dualize."""
    data = _unwrap(read_json(source), "cone")
    if isinstance(data, dict) and "semigroup_generators" in data and "rays" not in data:
        ring = _validate(RingSchema, data, "ring")
        if ring.cone is not None:
            return _cone_from_schema(ring.cone)
        d = len(ring.semigroup_generators[0])
        return build_cone(d, dualize(ring.semigroup_generators, d))
    return _cone_from_schema(_validate(ConeSchema, data, "cone"))


def load_fan(source: str) -> FanData:
    schema = _validate(FanSchema, _unwrap(read_json(source), "fan"), "fan")
    d = schema.lattice_rank if schema.lattice_rank is not None else len(schema.rays[0])
    return build_fan(d, schema.rays, schema.maximal_cones, complete=schema.complete)


def load_ring(source: str) -> SemigroupRingSpec:
    schema = _validate(RingSchema, _unwrap(read_json(source), "ring"), "ring")
    cone = _cone_from_schema(schema.cone) if schema.cone is not None else None
    return build_ring(schema.semigroup_generators, cone)


def load_monomial_ideal(ring: SemigroupRingSpec, source: str) -> MonomialIdealSpec:
    """``maximal`` or a JSON list of lattice points (or {"generators": [...]})."""
    if source.strip() == "maximal":
        return maximal_ideal(ring)
    data = read_json(source)
    if isinstance(data, list):
        data = {"generators": data}
    schema = _validate(IdealGeneratorsSchema, data, "monomial ideal")
    return build_monomial_ideal(ring, schema.generators)


def load_divisor(ring: SemigroupRingSpec, source: str) -> WeilDivisor:
    """A JSON list of coefficients, one per ray of the ring's cone (or {"coefficients": [...]})."""
    data = read_json(source)
    if isinstance(data, list):
        data = {"coefficients": data}
    schema = _validate(DivisorSchema, data, "divisor")
    if len(schema.coefficients) != ring.cone.ray_count:
        raise InputError(
            f"Divisor has {len(schema.coefficients)} coefficients, but the cone has {ring.cone.ray_count} rays."
        )
    return WeilDivisor(tuple(schema.coefficients))


# ── Polynomial inputs ──────────────────────────────────────────────────────────

def _poly(p: int, n: int, terms) -> PrimeFieldPoly:
    return PrimeFieldPoly.from_terms(p, n, ((t.exponents, t.coefficient) for t in terms))


def load_ideal(source: str) -> PrimeFieldIdeal:
    schema = _validate(IdealSchema, read_json(source), "ideal")
    p = require_prime(schema.characteristic)
    return PrimeFieldIdeal(p, schema.variables, tuple(_poly(p, schema.variables, f) for f in schema.polynomials))


def load_polynomial(source: str) -> PrimeFieldPoly:
    """A {"terms": [...]} object, or an ideal object holding exactly one polynomial."""
    data = read_json(source)
    if isinstance(data, dict) and "polynomials" in data:
        ideal = load_ideal(source)
        if len(ideal.polynomials) != 1:
            raise InputError(f"Expected one polynomial, got {len(ideal.polynomials)}.")
        return ideal.polynomials[0]
    schema = _validate(PolynomialSchema, data, "polynomial")
    p = require_prime(schema.characteristic)
    return _poly(p, schema.variables, schema.terms)


# ── Samples ────────────────────────────────────────────────────────────────────

def load_samples(source: str, d: Optional[int] = None) -> Tuple[int, List[HKSample]]:
    """(d, samples); also accepts the JSON emitted by ``hk``. An explicit ``d`` wins."""
    schema = _validate(SamplesSchema, read_json(source), "samples")
    d = d if d is not None else schema.d
    if d is None:
        raise InputError("Samples need the ring dimension 'd' (or pass --d).")
    p = schema.p
    for s in schema.samples:
        root, exact = integer_nthroot(s.q, s.e)
        if not exact or (p is not None and root != p):
            expected = f"p^e for p = {p}" if p is not None else "a power p^e"
            raise InputError(f"Sample at e={s.e} has q={s.q}, which is not {expected}.")
        p = require_prime(root)
    return d, [HKSample(e=s.e, q=s.q, length=s.length) for s in schema.samples]
