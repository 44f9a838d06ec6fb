"""Labeled square matrices, stochasticity checks and exact-order powers.

Every view in this package (Markov chain, evolution algebra, weighted
digraph) is backed by one :class:`StructureMatrix`.  Row ``i`` holds the
expansion of ``e_i^2``, so entry ``(i, j)`` is the coefficient of ``e_j``
in ``e_i^2`` and, for a chain, the one-step probability ``p_ij``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    DuplicateLabel,
    IndexOutOfRange,
    InvalidLabel,
    NonFiniteEntry,
    NonSquare,
    NotMarkov,
)

DEFAULT_TOL = 1e-9

_BAD_LABEL = re.compile(r"[,\s]")


def default_labels(n: int) -> tuple[str, ...]:
    return tuple(f"e{k}" for k in range(1, n + 1))


def resolve_index(labels: Sequence[str], key) -> int:
    """Map a label, or an in-range integer index, to an index."""
    if isinstance(key, (int, np.integer)) and not isinstance(key, bool):
        k = int(key)
        if not 0 <= k < len(labels):
            raise IndexOutOfRange(f"index {k} outside 0..{len(labels) - 1}")
        return k
    try:
        return list(labels).index(str(key))
    except ValueError:
        raise IndexOutOfRange(f"unknown label {key!r}") from None


def _check_labels(labels: Sequence[str], n: int) -> tuple[str, ...]:
    labels = tuple(str(x) for x in labels)
    if len(labels) != n:
        raise NonSquare(f"expected {n} labels, got {len(labels)}")
    for name in labels:
        if not name or _BAD_LABEL.search(name):
            raise InvalidLabel(f"label {name!r} is empty or contains a comma/whitespace")
    seen = set()
    for name in labels:
        if name in seen:
            raise DuplicateLabel(f"label {name!r} appears more than once")
        seen.add(name)
    return labels


@dataclass(frozen=True, eq=False)
class StructureMatrix:
    """Immutable labeled ``n x n`` real matrix.

    ``entries`` is a read-only float64 array.  Equality is exact on
    entries and labels.
    """

    entries: np.ndarray
    labels: tuple[str, ...]

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def index(self, label_or_index) -> int:
        return resolve_index(self.labels, label_or_index)

    def row(self, i: int) -> np.ndarray:
        return self.entries[i]

    def restrict(self, members: Sequence[int]) -> "StructureMatrix":
        idx = list(members)
        sub = self.entries[np.ix_(idx, idx)]
        return _freeze(sub, tuple(self.labels[k] for k in idx))

    def tolist(self) -> list[list[float]]:
        return self.entries.tolist()

    def __eq__(self, other):
        if not isinstance(other, StructureMatrix):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.labels, self.entries.tobytes()))

    def __repr__(self):
        return f"StructureMatrix(labels={list(self.labels)}, entries={self.tolist()})"


def _freeze(arr: np.ndarray, labels: tuple[str, ...]) -> StructureMatrix:
    arr = np.array(arr, dtype=float, copy=True)
    arr.setflags(write=False)
    return StructureMatrix(arr, labels)


def make_structure_matrix(
    rows: Iterable[Sequence[float]], labels: Optional[Sequence[str]] = None
) -> StructureMatrix:
    rows = [list(r) for r in rows]
    n = len(rows)
    if n == 0:
        raise NonSquare("matrix has no rows")
    for i, r in enumerate(rows):
        if len(r) != n:
            raise NonSquare(f"row {i + 1} has {len(r)} entries, expected {n}")
    arr = np.array(rows, dtype=float)
    if not np.all(np.isfinite(arr)):
        i, j = np.argwhere(~np.isfinite(arr))[0]
        raise NonFiniteEntry(f"entry ({i + 1},{j + 1}) is not finite")
    labels = default_labels(n) if labels is None else _check_labels(labels, n)
    return _freeze(arr, labels)


def identity(n: int, labels: Optional[Sequence[str]] = None) -> StructureMatrix:
    return make_structure_matrix(np.eye(n).tolist(), labels)


def _row_defect(M: StructureMatrix, tol: float) -> Optional[tuple[int, float]]:
    a = M.entries
    sums = a.sum(axis=1)
    for i in range(M.n):
        if np.any(a[i] < -tol) or np.any(a[i] > 1 + tol) or abs(sums[i] - 1.0) > tol:
            return i, float(sums[i])
    return None


def is_row_stochastic(M: StructureMatrix, tol: float = DEFAULT_TOL) -> bool:
    if tol <= 0:
        raise ValueError("tol must be positive")
    return _row_defect(M, tol) is None


@dataclass(frozen=True)
class MarkovChain:
    """A structure matrix certified row-stochastic within ``tol``."""

    matrix: StructureMatrix
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        bad = _row_defect(self.matrix, self.tol)
        if bad is not None:
            row, total = bad
            raise NotMarkov(row, total)

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def labels(self) -> tuple[str, ...]:
        return self.matrix.labels

    @classmethod
    def from_rows(cls, rows, labels=None, tol: float = DEFAULT_TOL) -> "MarkovChain":
        return cls(make_structure_matrix(rows, labels), tol)


@dataclass(frozen=True)
class PowerResult:
    exponent: int
    matrix: StructureMatrix


def matrix_power(M: StructureMatrix, n: int) -> PowerResult:
    """``M**n`` by left-to-right binary exponentiation.

    The bits of ``n`` are consumed from the most significant end:
    square, then multiply by ``M`` when the bit is set.  The operation
    order is therefore fixed for a given ``n``.
    """
    if n < 0 or int(n) != n:
        raise ValueError("exponent must be a nonnegative integer")
    n = int(n)
    a = M.entries
    result = np.eye(M.n)
    for bit in bin(n)[2:] if n else "":
        result = result @ result
        if bit == "1":
            result = result @ a
    return PowerResult(n, _freeze(result, M.labels))


def format_number(x: float, digits: int = 6) -> str:
    """At most ``digits`` significant digits, trailing zeros trimmed."""
    if x == 0:
        return "0"
    text = f"{x:.{digits}g}"
    if "e" in text:
        mant, exp = text.split("e")
        if "." in mant:
            mant = mant.rstrip("0").rstrip(".")
        return f"{mant}e{int(exp)}"
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return text

