"""
models/linalg.py — Exact integer matrices and finitely generated abelian groups.

All values are immutable. Matrix entries are Python ints (arbitrary
precision), so no count, length or entry can overflow.
"""

from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Tuple

from utils.errors import DimensionMismatchError


@dataclass(frozen=True)
class IntegerMatrix:
    """Row-major integer matrix; ``rows x cols`` may be zero in either direction."""
    rows: int
    cols: int
    entries: Tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatchError(
                f"IntegerMatrix expects {self.rows}x{self.cols}={self.rows * self.cols} "
                f"entries, got {len(self.entries)}."
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        for r in rows:
            if len(r) != width:
                raise DimensionMismatchError(f"Ragged matrix: expected rows of length {width}.")
        return cls(len(rows), width, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> List[List[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix.from_rows([self.column(j) for j in range(self.cols)], cols=self.rows)

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}."
            )
        cols = [other.column(j) for j in range(other.cols)]
        return IntegerMatrix.from_rows(
            [[sum(a * b for a, b in zip(self.row(i), c)) for c in cols] for i in range(self.rows)],
            cols=other.cols,
        )

    def apply(self, v: Sequence[int]) -> Tuple[int, ...]:
        """Matrix-vector product ``self @ v``."""
        if len(v) != self.cols:
            raise DimensionMismatchError(f"Vector of length {len(v)} for a matrix with {self.cols} columns.")
        return tuple(sum(a * b for a, b in zip(self.row(i), v)) for i in range(self.rows))

    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self[i, i] for i in range(min(self.rows, self.cols)))


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == S`` with ``U``, ``V`` unimodular and ``S`` in Smith normal form."""
    U: IntegerMatrix
    S: IntegerMatrix
    V: IntegerMatrix

    @property
    def invariants(self) -> Tuple[int, ...]:
        """Diagonal of S: non-negative, each dividing the next (zeros last)."""
        return self.S.diagonal()

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariants if d != 0)


@dataclass(frozen=True)
class AbelianGroupPresentation:
    """
    The cokernel of ``relation_matrix: Z^cols -> Z^rows``.

    Generators are the standard basis of Z^rows, relations are the columns.
    Canonical coordinates of an element are ``U @ v`` read through the SNF:
    torsion coordinates modulo ``torsion_invariants`` followed by
    ``free_rank`` integer coordinates.
    """
    generator_count: int
    relation_matrix: IntegerMatrix
    snf: SmithDecomposition
    free_rank: int
    torsion_invariants: Tuple[int, ...]
    # Row indices of U feeding the torsion and free coordinates.
    torsion_rows: Tuple[int, ...] = field(default=(), repr=False)
    free_rows: Tuple[int, ...] = field(default=(), repr=False)

    @property
    def trivial_count(self) -> int:
        return self.generator_count - self.free_rank - len(self.torsion_invariants)

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion_invariants

    def describe(self) -> str:
        """``Z^2 + Z/2 + Z/6`` style summary; ``0`` for the trivial group."""
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion_invariants)
        return " + ".join(parts) if parts else "0"

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * len(self.torsion_invariants), (0,) * self.free_rank)


@dataclass(frozen=True, order=False)
class GroupElement:
    """An element of an AbelianGroupPresentation in canonical reduced form."""
    group: AbelianGroupPresentation = field(compare=False, hash=False, repr=False)
    torsion: Tuple[int, ...]
    free: Tuple[int, ...]

    @property
    def coords(self) -> Tuple[int, ...]:
        return self.torsion + self.free

    def _combine(self, other: "GroupElement", sign: int) -> "GroupElement":
        torsion = tuple(
            (a + sign * b) % d
            for a, b, d in zip(self.torsion, other.torsion, self.group.torsion_invariants)
        )
        free = tuple(a + sign * b for a, b in zip(self.free, other.free))
        return GroupElement(self.group, torsion, free)

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return self._combine(other, 1)

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self._combine(other, -1)

    def __neg__(self) -> "GroupElement":
        return self.group.zero() - self

    def __mul__(self, k: int) -> "GroupElement":
        torsion = tuple((k * a) % d for a, d in zip(self.torsion, self.group.torsion_invariants))
        return GroupElement(self.group, torsion, tuple(k * a for a in self.free))

    __rmul__ = __mul__

    @property
    def is_zero(self) -> bool:
        return not any(self.torsion) and not any(self.free)

    def sort_key(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        return (self.free, self.torsion)


def sum_elements(group: AbelianGroupPresentation, items: Iterable[Tuple[GroupElement, int]]) -> GroupElement:
    """``sum(multiplicity * element)`` starting from the group's zero."""
    total = group.zero()
    for element, multiplicity in items:
        total = total + element * multiplicity
    return total
