"""Conversions between chains, evolution algebras and weighted digraphs."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import (
    DEFAULT_TOL,
    MarkovChain,
    StructureMatrix,
    _freeze,
    format_number,
    resolve_index,
    is_row_stochastic,
    make_structure_matrix,
)


@dataclass(frozen=True)
class EvolutionAlgebra:
    """Evolution algebra given by its structure matrix (row convention).

    Generators are the matrix labels; products of distinct generators
    vanish and ``e_i^2 = sum_j M[i, j] e_j``.
    """

    matrix: StructureMatrix

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def generators(self) -> tuple[str, ...]:
        return self.matrix.labels

    @classmethod
    def from_rows(cls, rows, labels=None) -> "EvolutionAlgebra":
        return cls(make_structure_matrix(rows, labels))

    def law(self, i: int) -> str:
        """Render ``e_i^2`` as text, e.g. ``e1^2 = 0.5 e1 + 0.5 e3``."""
        text = ""
        for j, c in enumerate(self.matrix.row(i)):
            if c == 0:
                continue
            coef = "" if abs(c) == 1 else format_number(abs(float(c))) + " "
            term = coef + self.generators[j]
            if not text:
                text = ("-" if c < 0 else "") + term
            else:
                text += (" - " if c < 0 else " + ") + term
        return f"{self.generators[i]}^2 = {text or '0'}"

    def laws(self) -> list[str]:
        return [self.law(i) for i in range(self.n)]


@dataclass(frozen=True)
class WeightedDigraph:
    """Vertices plus weighted directed edges ``(from, to, weight)``.

    Edges are kept sorted by ``(from, to)``; loops are allowed and no
    pair appears twice.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int, float], ...]

    def __post_init__(self):
        n = len(self.vertices)
        edges = tuple(sorted((int(u), int(v), float(w)) for u, v, w in self.edges))
        pairs = set()
        for u, v, w in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) has an endpoint outside 0..{n - 1}")
            if w == 0:
                raise ValueError(f"edge ({u},{v}) has zero weight")
            if (u, v) in pairs:
                raise ValueError(f"duplicate edge ({u},{v})")
            pairs.add((u, v))
        object.__setattr__(self, "edges", edges)
        succ: list[list[int]] = [[] for _ in range(n)]
        wt: dict[tuple[int, int], float] = {}
        for u, v, w in edges:
            succ[u].append(v)
            wt[(u, v)] = w
        object.__setattr__(self, "_succ", tuple(tuple(s) for s in succ))
        object.__setattr__(self, "_weight", wt)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def successors(self, u: int) -> tuple[int, ...]:
        """Out-neighbours of ``u`` in ascending order."""
        return self._succ[u]

    def weight(self, u: int, v: int) -> Optional[float]:
        return self._weight.get((u, v))

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._weight

    def index(self, label_or_index) -> int:
        return resolve_index(self.vertices, label_or_index)

    @classmethod
    def unweighted(cls, vertices: Sequence[str], arcs) -> "WeightedDigraph":
        return cls(tuple(vertices), tuple((u, v, 1.0) for u, v in arcs))


def algebra_from_chain(chain: MarkovChain) -> EvolutionAlgebra:
    return EvolutionAlgebra(chain.matrix)


def chain_from_algebra(alg: EvolutionAlgebra, tol: float = DEFAULT_TOL) -> MarkovChain:
    # MarkovChain validates and raises NotMarkov(row, sum)
    return MarkovChain(alg.matrix, tol)


def graph_from_algebra(alg: EvolutionAlgebra, zero_tol: float = 0.0) -> WeightedDigraph:
    if zero_tol < 0:
        raise ValueError("zero_tol must be nonnegative")
    a = alg.matrix.entries
    edges = tuple(
        (i, j, float(a[i, j]))
        for i in range(alg.n)
        for j in range(alg.n)
        if abs(a[i, j]) > zero_tol
    )
    return WeightedDigraph(alg.generators, edges)


def graph_from_chain(chain: MarkovChain, zero_tol: float = 0.0) -> WeightedDigraph:
    """Markov graph of a chain; entries in ``[-tol, 0)`` give no edge."""
    a = chain.matrix.entries
    edges = tuple(
        (i, j, float(a[i, j]))
        for i in range(chain.n)
        for j in range(chain.n)
        if a[i, j] > zero_tol
    )
    return WeightedDigraph(chain.labels, edges)


def algebra_from_graph(g: WeightedDigraph) -> EvolutionAlgebra:
    a = np.zeros((g.n, g.n))
    for u, v, w in g.edges:
        a[u, v] = w
    return EvolutionAlgebra(_freeze(a, tuple(g.vertices)))


def is_markov(alg: EvolutionAlgebra, tol: float = DEFAULT_TOL) -> bool:
    return is_row_stochastic(alg.matrix, tol)


def is_graphicable(alg: EvolutionAlgebra, tol: float = DEFAULT_TOL) -> bool:
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = alg.matrix.entries
    return bool(np.all((np.abs(a) <= tol) | (np.abs(a - 1.0) <= tol)))
