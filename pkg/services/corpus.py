"""
services/corpus.py — Randomized verification of the class identity on toric rings.
"""

import logging
import random
from typing import List, Optional, Sequence

from models.corpus import CorpusEntry, CorpusReport
from models.frobenius import FrobeniusDecomposition, Orientation
from models.toric import ConeData
from services.frobenius import check_tau_identities, frobenius_decompose_affine, verify_theorem_main
from services.linalg import rank
from services.toric_geometry import build_cone, dualize, primitive
from utils.errors import FrobeniusKitError, InputError
from utils.numbers import frobenius_q, require_prime
from utils.settings import settings

logger = logging.getLogger(__name__)

RAY_BOUND = 4
MAX_ATTEMPTS = 1000


def random_cone(rng: random.Random, d: int) -> ConeData:
    """
    Sample d + {1, 2, 3} vectors in [-4, 4]^d and keep the extremal primitive
    rays of their cone. Samples that are not full-dimensional or not pointed
    are drawn again, and so are simplicial cones in rank >= 3, whose class
    group is finite.
    """
    if d < 1:
        raise InputError(f"Cone dimension must be >= 1, got {d}.")
    for _ in range(MAX_ATTEMPTS):
        count = d + rng.randint(1, 3)
        sample = [tuple(rng.randint(-RAY_BOUND, RAY_BOUND) for _ in range(d)) for _ in range(count)]
        candidates = sorted({primitive(v) for v in sample if any(v)})
        if len(candidates) < d or rank(candidates) < d:
            continue
        try:
            cone = build_cone(d, dualize(dualize(candidates, d), d))
        except FrobeniusKitError:
            continue
        if d >= 3 and cone.ray_count == d:
            continue
        return cone
    raise InputError(f"No suitable cone found in {MAX_ATTEMPTS} draws (d={d}).")


def _decide_orientation(cases: List[tuple]) -> Optional[Orientation]:
    for orientation in (Orientation.AS_STATED, Orientation.SIGN_FLIPPED):
        if all(reports[orientation].passed for *_, reports in cases):
            return orientation
    return None


def verify_cones(
    cones: Sequence[ConeData],
    primes: Sequence[int] = (2, 3, 5),
    e_max: int = 2,
    seed: int = 0,
    budget: Optional[int] = None,
    workers: Optional[int] = None,
) -> CorpusReport:
    """Check the class identity and the tau identities on every (cone, p, e) within budget."""
    budget = budget if budget is not None else settings.enumeration_budget
    for p in primes:
        require_prime(p)

    cases = []
    skipped = []
    for index, cone in enumerate(cones):
        for p in primes:
            for e in range(1, e_max + 1):
                if frobenius_q(p, e) ** cone.lattice_rank > budget:
                    skipped.append((index, p, e))
                    continue
                dec: FrobeniusDecomposition = frobenius_decompose_affine(cone, p, e, budget=budget, workers=workers)
                reports = {
                    o: verify_theorem_main(cone, p, e, orientation=o, decomposition=dec)
                    for o in Orientation
                }
                cases.append((index, cone, p, e, check_tau_identities(cone, dec), reports))

    orientation = _decide_orientation(cases)
    if orientation is None:
        logger.warning("No single orientation passes the whole corpus of %d cases.", len(cases))
    elif orientation == Orientation.SIGN_FLIPPED:
        logger.warning("Corpus passes only in the sign-flipped orientation.")
    used = orientation or Orientation.AS_STATED

    entries = tuple(
        CorpusEntry(cone_index=index, cone=cone, p=p, e=e, report=reports[used], tau_consistent=tau_ok)
        for index, cone, p, e, tau_ok, reports in cases
    )
    report = CorpusReport(
        seed=seed, cones=tuple(cones), entries=entries, orientation=orientation, skipped=tuple(skipped),
    )
    logger.info(
        "Corpus: %d cones, %d cases, %d failures, %d skipped.",
        len(cones), len(entries), len(report.failures), len(skipped),
    )
    return report


def run_corpus(
    seed: int,
    count: int,
    dims: Sequence[int] = (2, 3, 4),
    primes: Sequence[int] = (2, 3, 5),
    e_max: int = 2,
    budget: Optional[int] = None,
    workers: Optional[int] = None,
) -> CorpusReport:
    """
    Deterministic in ``seed``: the same arguments always draw the same cones.
    Cone i has dimension dims[i % len(dims)].

    Args:
        seed:     Seed of the random.Random instance that draws the cones.
        count:    Number of cones.
        dims:     Cone dimensions, used in rotation.
        primes:   Characteristics checked for every cone.
        e_max:    Largest Frobenius exponent checked.
        budget:   Residue budget per decomposition (settings default).
        workers:  Worker processes (settings default).

    Returns:
        A CorpusReport with one entry per (cone, p, e) within budget.
    """
    if count < 0:
        raise InputError(f"Corpus size must be >= 0, got {count}.")
    if not dims:
        raise InputError("At least one cone dimension is needed.")
    if e_max < 1:
        raise InputError(f"e_max must be >= 1, got {e_max}.")
    rng = random.Random(seed)
    cones = [random_cone(rng, dims[i % len(dims)]) for i in range(count)]
    return verify_cones(cones, primes, e_max, seed=seed, budget=budget, workers=workers)
