"""
cli/schemas.py — JSON input schemas.

Schemas check shape and scalar types only; geometric conditions (primitive
rays, strong convexity, smoothness) are enforced by the service builders.
Integers may be given as JSON numbers or as decimal strings.
"""

from typing import Annotated, List, Optional, Union

from pydantic import BaseModel, BeforeValidator, Field, field_validator

from utils.errors import InputError
from utils.numbers import parse_integer


def _integer(value: Union[int, str]) -> int:
    try:
        return parse_integer(value)
    except InputError as exc:
        raise ValueError(exc.detail)


BigInt = Annotated[int, BeforeValidator(_integer)]


# ── Toric data ─────────────────────────────────────────────────────────────────

class ConeSchema(BaseModel):
    lattice_rank: Optional[BigInt] = Field(
        None, description="Rank d of N = Z^d; inferred from the rays when omitted.",
    )
    rays: List[List[BigInt]] = Field(
        ..., min_length=1, description="Primitive extremal rays in N, one list of d integers each.",
    )

    @field_validator("rays")
    @classmethod
    def validate_rays(cls, v: List[List[int]]) -> List[List[int]]:
        if len({len(r) for r in v}) != 1:
            raise ValueError("All rays must have the same number of coordinates.")
        return v


class FanSchema(ConeSchema):
    maximal_cones: List[List[BigInt]] = Field(
        ..., min_length=1, description="Ray indices (0-based) of every maximal cone.",
    )
    complete: bool = Field(True, description="Whether the fan is complete.")


class RingSchema(BaseModel):
    semigroup_generators: List[List[BigInt]] = Field(
        ..., min_length=1, description="Generators of the semigroup sigma^dual ∩ M.",
    )
    cone: Optional[ConeSchema] = Field(
        None, description="The cone sigma; derived by dualizing the generators when omitted.",
    )


# ── Polynomials ────────────────────────────────────────────────────────────────

class TermSchema(BaseModel):
    exponents: List[BigInt]
    coefficient: BigInt = 1


class IdealSchema(BaseModel):
    characteristic: BigInt = Field(..., description="The prime p.")
    variables: BigInt = Field(..., ge=1, description="Number of variables n.")
    polynomials: List[List[TermSchema]] = Field(..., description="Each polynomial is a list of terms.")


class PolynomialSchema(BaseModel):
    characteristic: BigInt
    variables: BigInt = Field(..., ge=1)
    terms: List[TermSchema]


# ── Hilbert-Kunz samples ───────────────────────────────────────────────────────

class SampleSchema(BaseModel):
    e: BigInt = Field(..., ge=1)
    q: BigInt = Field(..., ge=2)
    length: BigInt = Field(..., ge=0)


class SamplesSchema(BaseModel):
    d: Optional[BigInt] = Field(None, ge=1, description="Krull dimension of the ring.")
    p: Optional[BigInt] = None
    samples: List[SampleSchema] = Field(..., min_length=2)


# ── Monomial ideals and modules ────────────────────────────────────────────────

class IdealGeneratorsSchema(BaseModel):
    generators: List[List[BigInt]] = Field(
        ..., min_length=1, description="Lattice points of sigma^dual ∩ M generating a monomial ideal.",
    )


class DivisorSchema(BaseModel):
    coefficients: List[BigInt] = Field(
        ..., min_length=1, description="One integer a_rho per ray: the module O(sum a_rho D_rho).",
    )
