"""
models/corpus.py — Results of a randomized verification run.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

from models.frobenius import Orientation, VerificationReport
from models.toric import ConeData


@dataclass(frozen=True)
class CorpusEntry:
    cone_index: int
    cone: ConeData
    p: int
    e: int
    report: VerificationReport
    tau_consistent: bool

    @property
    def passed(self) -> bool:
        return self.report.passed and self.tau_consistent


@dataclass(frozen=True)
class CorpusReport:
    """
    One orientation is chosen for the whole run: the stated one when every
    case passes under it, otherwise the sign-flipped one if that passes
    everywhere. ``orientation`` is None when neither does.
    """
    seed: int
    cones: Tuple[ConeData, ...]
    entries: Tuple[CorpusEntry, ...]
    orientation: Optional[Orientation]
    skipped: Tuple[Tuple[int, int, int], ...]  # (cone_index, p, e) over budget

    @property
    def passed(self) -> bool:
        return self.orientation is not None and all(entry.passed for entry in self.entries)

    @property
    def failures(self) -> Tuple[CorpusEntry, ...]:
        return tuple(entry for entry in self.entries if not entry.passed)
