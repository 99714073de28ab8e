"""
services/toric_geometry.py — Cones, fans, divisor class groups and the canonical class.

Conventions:
    * rays v_rho are the inner normals of the dual cone sigma^dual;
    * Cl is the cokernel of M -> Z^rays, m -> (<m, v_rho>)_rho, presented
      with one generator per ray;
    * the canonical divisor is K = -sum_rho D_rho.
"""

import logging
import math
from functools import cmp_to_key, lru_cache
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

from models.linalg import AbelianGroupPresentation
from models.toric import (
    ConeData,
    DivisorClass,
    FanData,
    QWeilDivisor,
    RayConfiguration,
    SemigroupRingSpec,
    Vector,
    WeilDivisor,
    pairing,
)
from services.linalg import cokernel, determinant, is_torsion, kernel_line, rank, reduce
from utils.errors import (
    DimensionMismatchError,
    InputError,
    InvalidConeError,
    InvalidFanError,
    NotFullDimensionalError,
)

logger = logging.getLogger(__name__)


def primitive(v: Sequence[int]) -> Vector:
    g = math.gcd(*v)
    return tuple(x // g for x in v) if g else tuple(v)


def _check_vectors(vectors: Iterable[Sequence[int]], d: int, what: str) -> List[Vector]:
    out = []
    for v in vectors:
        v = tuple(int(x) for x in v)
        if len(v) != d:
            raise DimensionMismatchError(f"{what} {v} has {len(v)} coordinates, expected {d}.")
        out.append(v)
    return out


# ── Dualization (double description by rank tests) ─────────────────────────────

def _dual_extremal_rays(generators: List[Vector], d: int) -> List[Vector]:
    """Extremal primitive rays of {v : <g, v> >= 0 for all g}; generators must span Q^d."""
    if d == 1:
        candidates = [(1,), (-1,)]
        return sorted(c for c in candidates if all(pairing(g, c) >= 0 for g in generators))

    found = set()
    for subset in combinations(generators, d - 1):
        if rank(subset) < d - 1:
            continue
        v = primitive(kernel_line(subset))
        for candidate in (v, tuple(-x for x in v)):
            if all(pairing(g, candidate) >= 0 for g in generators):
                found.add(candidate)
    return sorted(found)


def dualize(generators: Sequence[Sequence[int]], lattice_rank: Optional[int] = None) -> List[Vector]:
    """
    Extremal primitive rays of the dual of the cone spanned by ``generators``.

    Both the input cone and its dual must be full-dimensional: the
    generators must span Q^d and their cone must contain no line.
    The output is sorted lexicographically.
    """
    generators = list(generators)
    if not generators:
        raise NotFullDimensionalError("Cannot dualize an empty generator list.")
    d = lattice_rank if lattice_rank is not None else len(generators[0])
    gens = sorted({g for g in _check_vectors(generators, d, "Generator") if any(g)})

    if not gens or rank(gens) < d:
        raise NotFullDimensionalError(
            f"Generators span a subspace of rank {rank(gens)} < {d}; the dual cone is not pointed."
        )
    rays = _dual_extremal_rays(gens, d)
    if rank(rays) < d:
        raise NotFullDimensionalError(
            "The cone spanned by the generators contains a line; its dual is not full-dimensional."
        )
    logger.debug("Dualized %d generators in rank %d into %d rays.", len(gens), d, len(rays))
    return rays


# ── Builders with validation ───────────────────────────────────────────────────

def _validate_rays(rays: List[Vector], error: type) -> None:
    seen = set()
    for v in rays:
        if not any(v):
            raise error("Rays must be nonzero.")
        if math.gcd(*v) != 1:
            raise error(f"Ray {v} is not primitive.")
        if v in seen:
            raise error(f"Duplicate ray {v}.")
        seen.add(v)


def build_cone(lattice_rank: int, rays: Sequence[Sequence[int]]) -> ConeData:
    """Validate ray data and return a ConeData (ray order is preserved)."""
    if lattice_rank < 1:
        raise InvalidConeError(f"Lattice rank must be >= 1, got {lattice_rank}.")
    rays = _check_vectors(rays, lattice_rank, "Ray")
    _validate_rays(rays, InvalidConeError)
    if rank(rays) < lattice_rank:
        raise NotFullDimensionalError(f"Rays do not span Q^{lattice_rank}; the cone is not full-dimensional.")

    dual = _dual_extremal_rays(rays, lattice_rank)
    if rank(dual) < lattice_rank:
        raise InvalidConeError("The cone contains a line (not strongly convex).")
    for v in rays:
        tight = [u for u in dual if pairing(u, v) == 0]
        if rank(tight) != lattice_rank - 1:
            raise InvalidConeError(f"Ray {v} is not extremal.")
    return ConeData(lattice_rank=lattice_rank, rays=tuple(rays))


def _angle_key(a: Vector, b: Vector) -> int:
    def half(v):
        return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1

    if half(a) != half(b):
        return half(a) - half(b)
    cross = a[0] * b[1] - a[1] * b[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def _check_complete_low_dimension(rays: List[Vector], cones: List[Tuple[int, ...]], d: int) -> None:
    expected = set()
    if d == 1:
        if sorted(rays) != [(-1,), (1,)]:
            raise InvalidFanError("A complete fan in rank 1 has rays (1) and (-1).")
        expected = {frozenset([0]), frozenset([1])}
    else:
        if len(rays) < 3:
            raise InvalidFanError("A complete fan in rank 2 needs at least three rays.")
        order = sorted(range(len(rays)), key=cmp_to_key(lambda i, j: _angle_key(rays[i], rays[j])))
        for a, b in zip(order, order[1:] + order[:1]):
            u, v = rays[a], rays[b]
            if u[0] * v[1] - u[1] * v[0] <= 0:
                raise InvalidFanError(f"Rays {u} and {v} leave a gap of angle >= pi; the fan is not complete.")
            expected.add(frozenset([a, b]))
    if {frozenset(c) for c in cones} != expected:
        raise InvalidFanError("Maximal cones do not cover the plane by consecutive rays; the fan is not complete.")


def build_fan(
    lattice_rank: int,
    rays: Sequence[Sequence[int]],
    maximal_cones: Sequence[Sequence[int]],
    complete: bool = True,
) -> FanData:
    """
    Validate a smooth fan.

    Every maximal cone must consist of ``lattice_rank`` rays forming a
    Z-basis. Completeness is checked in rank <= 2 and trusted above.
    """
    rays = _check_vectors(rays, lattice_rank, "Ray")
    _validate_rays(rays, InvalidFanError)
    cones: List[Tuple[int, ...]] = []
    for cone in maximal_cones:
        idx = tuple(int(i) for i in cone)
        if any(i < 0 or i >= len(rays) for i in idx) or len(set(idx)) != len(idx):
            raise InvalidFanError(f"Maximal cone {list(idx)} has invalid ray indices.")
        if len(idx) != lattice_rank or abs(determinant([rays[i] for i in idx])) != 1:
            raise InvalidFanError(f"Maximal cone {list(idx)} is not smooth (rays are not a Z-basis).")
        cones.append(idx)
    if len({frozenset(c) for c in cones}) != len(cones):
        raise InvalidFanError("Duplicate maximal cones.")
    used = {i for c in cones for i in c}
    if used != set(range(len(rays))):
        raise InvalidFanError("Every ray must belong to some maximal cone.")
    if complete and lattice_rank <= 2:
        _check_complete_low_dimension(rays, cones, lattice_rank)
    return FanData(
        lattice_rank=lattice_rank,
        rays=tuple(rays),
        maximal_cones=tuple(cones),
        complete=complete,
    )


def build_ring(
    semigroup_generators: Sequence[Sequence[int]],
    cone: Optional[ConeData] = None,
) -> SemigroupRingSpec:
    """
    A semigroup ring from its generators; the cone is derived by
    dualization when not given. Generators must lie in the dual cone.
    """
    gens = list(semigroup_generators)
    if not gens:
        raise InputError("A semigroup ring needs at least one generator.")
    if cone is None:
        d = len(gens[0])
        cone = build_cone(d, dualize(gens, d))
    gens = _check_vectors(gens, cone.lattice_rank, "Semigroup generator")
    for g in gens:
        if not any(g):
            raise InputError("Semigroup generators must be nonzero.")
        if not cone.contains_dual(g):
            raise InputError(f"Semigroup generator {g} does not lie in the dual cone.")
    return SemigroupRingSpec(cone=cone, semigroup_generators=tuple(gens))


# ── Divisors and classes ───────────────────────────────────────────────────────

@lru_cache(maxsize=256)
def class_group(cfg: RayConfiguration) -> AbelianGroupPresentation:
    """Cl(A) for a cone, A_{d-1}(X) for a fan: coker(M -> Z^rays)."""
    return cokernel(cfg.pairing_matrix())


def divisor_class(cfg: RayConfiguration, divisor: WeilDivisor) -> DivisorClass:
    if len(divisor.coefficients) != cfg.ray_count:
        raise DimensionMismatchError(
            f"Divisor has {len(divisor.coefficients)} coefficients, expected {cfg.ray_count}."
        )
    return DivisorClass(reduce(class_group(cfg), divisor.coefficients))


def principal_divisor(cfg: RayConfiguration, m: Sequence[int]) -> WeilDivisor:
    """div(chi^m) = sum_rho <m, v_rho> D_rho."""
    return WeilDivisor(cfg.pairings(tuple(int(x) for x in m)))


def prime_divisor(cfg: RayConfiguration, index: int) -> WeilDivisor:
    return WeilDivisor(tuple(1 if i == index else 0 for i in range(cfg.ray_count)))


def canonical_divisor(cfg: RayConfiguration) -> WeilDivisor:
    return WeilDivisor((-1,) * cfg.ray_count)


def canonical_class(cfg: RayConfiguration) -> DivisorClass:
    """cl(omega_A) for a cone, K_X for a fan."""
    return divisor_class(cfg, canonical_divisor(cfg))


def is_q_gorenstein(cfg: RayConfiguration) -> bool:
    return is_torsion(canonical_class(cfg).element)


def round_down(divisor: QWeilDivisor) -> WeilDivisor:
    return WeilDivisor(tuple(math.floor(c) for c in divisor.coefficients))


def projective_degree(fan: FanData, cls: DivisorClass) -> int:
    """
    The degree isomorphism A_{d-1}(X) -> Z for a fan with class group Z in
    which every prime divisor has degree one (projective space).
    """
    group = class_group(fan)
    if group.free_rank != 1 or group.torsion_invariants:
        raise InputError(f"Degree map needs A_(d-1) = Z, got {group.describe()}.")
    unit = divisor_class(fan, prime_divisor(fan, 0)).free[0]
    if abs(unit) != 1:
        raise InputError("Degree map needs the torus-invariant prime divisors to generate A_(d-1).")
    return cls.free[0] * unit


# ── Named examples ─────────────────────────────────────────────────────────────

def quadrant_cone(d: int = 2) -> ConeData:
    """The positive orthant: k[x_1, ..., x_d]."""
    return build_cone(d, [tuple(1 if i == j else 0 for j in range(d)) for i in range(d)])


def quadrant_ring(d: int = 2) -> SemigroupRingSpec:
    cone = quadrant_cone(d)
    return build_ring(cone.rays, cone)


def veronese_cone() -> ConeData:
    """Second Veronese of the plane, k[x^2, xy, y^2] = k[u, v, w]/(uw - v^2)."""
    return build_cone(2, [(1, 0), (1, 2)])


def veronese_ring() -> SemigroupRingSpec:
    return build_ring([(2, -1), (1, 0), (0, 1)], veronese_cone())


def segre_generators(m: int, n: int) -> List[Vector]:
    """
    Lattice points (a, b, 1) with a a vertex of the standard (m-1)-simplex
    and b a vertex of the standard (n-1)-simplex.
    """
    if m < 1 or n < 1:
        raise InputError("Segre factors need m, n >= 1.")

    def vertices(k: int) -> List[Vector]:
        return [tuple(0 for _ in range(k))] + [tuple(1 if i == j else 0 for j in range(k)) for i in range(k)]

    return [a + b + (1,) for a in vertices(m - 1) for b in vertices(n - 1)]


def segre_ring(m: int = 2, n: int = 3) -> SemigroupRingSpec:
    """Cone over P^(m-1) x P^(n-1), i.e. k[x_ij]/I_2(x_ij)."""
    return build_ring(segre_generators(m, n))


def projective_space_fan(n: int) -> FanData:
    if n < 1:
        raise InputError(f"Projective space needs n >= 1, got {n}.")
    rays = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    rays.append(tuple(-1 for _ in range(n)))
    cones = [tuple(i for i in range(n + 1) if i != skip) for skip in range(n + 1)]
    return build_fan(n, rays, cones, complete=True)
