"""Brute-force walk enumeration and Markov weights.

This is deliberately slow: it is the independent check that entry
``(i, j)`` of ``M**n`` equals the summed weight of all length-``n`` walks
from ``i`` to ``j``.  Nothing here calls into :func:`matrix_power` except
:func:`verify_walk_theorem`, which compares the two.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .core import matrix_power
from .errors import IndexOutOfRange, InvalidWalk, TooLarge
from .triad import WeightedDigraph, algebra_from_graph

MAX_LENGTH = 16
MAX_DIMENSION = 12


@dataclass(frozen=True)
class Walk:
    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def render(self, labels) -> str:
        return "->".join(labels[v] for v in self.vertices)


@dataclass(frozen=True)
class WalkReport:
    source: int
    target: int
    length: int
    walks: tuple[Walk, ...]
    weight_sum: float
    matrix_entry: float
    abs_error: float
    ok: bool


def _guard(g: WeightedDigraph, i: int, j: int, n: int) -> None:
    if n < 0:
        raise ValueError("walk length must be nonnegative")
    if n > MAX_LENGTH or g.n > MAX_DIMENSION:
        raise TooLarge(
            f"walk enumeration limited to length <= {MAX_LENGTH} and "
            f"dimension <= {MAX_DIMENSION} (got length {n}, dimension {g.n})"
        )
    for k in (i, j):
        if not 0 <= k < g.n:
            raise IndexOutOfRange(f"index {k} outside 0..{g.n - 1}")


def _dfs(g: WeightedDigraph, i: int, n: int) -> Iterator[tuple[int, ...]]:
    # depth-first, successors in ascending order => lexicographic walks
    path = [i]

    def step(depth):
        if depth == n:
            yield tuple(path)
            return
        for v in g.successors(path[-1]):
            path.append(v)
            yield from step(depth + 1)
            path.pop()

    yield from step(0)


def enumerate_walks(g: WeightedDigraph, i: int, j: int, n: int) -> list[Walk]:
    """Every walk with exactly ``n`` edges from ``i`` to ``j``, lexicographically."""
    _guard(g, i, j, n)
    return [Walk(p) for p in _dfs(g, i, n) if p[-1] == j]


def markov_weight(g: WeightedDigraph, w: Walk) -> float:
    """Product of edge weights along ``w``; the empty walk weighs 1."""
    weight = 1.0
    for u, v in zip(w.vertices, w.vertices[1:]):
        x = g.weight(u, v)
        if x is None:
            raise InvalidWalk(f"({u},{v}) is not an edge")
        weight *= x
    return weight


def _weight_sums(g: WeightedDigraph, i: int, n_max: int) -> list[list[float]]:
    """``sums[n][j]`` for all ``n <= n_max`` in one depth-first pass.

    Prefix products are formed left to right from 1.0 and each target
    accumulates in enumeration order, so every entry is bit-identical to
    summing :func:`markov_weight` over :func:`enumerate_walks`.
    """
    sums = [[0.0] * g.n for _ in range(n_max + 1)]
    succ = [g.successors(u) for u in range(g.n)]
    wt = [[g.weight(u, v) for v in succ[u]] for u in range(g.n)]

    def step(u, depth, weight):
        sums[depth][u] += weight
        if depth == n_max:
            return
        for v, x in zip(succ[u], wt[u]):
            step(v, depth + 1, weight * x)

    step(i, 0, 1.0)
    return sums


def walk_weight_sum(g: WeightedDigraph, i: int, j: int, n: int) -> float:
    _guard(g, i, j, n)
    return _weight_sums(g, i, n)[n][j]


def verify_walk_theorem(
    g: WeightedDigraph, n_max: int, tol: float = 1e-9, keep_walks: bool = False
) -> list[WalkReport]:
    """Compare walk-weight sums with matrix powers for ``1 <= n <= n_max``.

    Reports come ordered by ``(n, i, j)``.  ``keep_walks`` attaches the
    enumerated walks to each report; it is off by default because the
    lists grow exponentially.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    _guard(g, 0, 0, n_max)
    M = algebra_from_graph(g).matrix
    per_source = [_weight_sums(g, i, n_max) for i in range(g.n)]
    reports = []
    for n in range(1, n_max + 1):
        power = matrix_power(M, n).matrix.entries
        for i in range(g.n):
            for j in range(g.n):
                s = per_source[i][n][j]
                entry = float(power[i, j])
                err = abs(s - entry)
                walks = tuple(enumerate_walks(g, i, j, n)) if keep_walks else ()
                reports.append(WalkReport(i, j, n, walks, s, entry, err, err <= tol))
    return reports
