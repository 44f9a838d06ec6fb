"""Structural classification of a Markov graph.

Accessibility is reflexive (zero steps allowed), so communication is an
equivalence relation whose classes are the strongly connected
components.  Closedness and periods use walks of length >= 1.

State sets are sorted tuples of vertex indices.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional, Sequence

import numpy as np

from .core import DEFAULT_TOL, MarkovChain
from .errors import DimensionTooLarge, EmptySet, IndexOutOfRange, NotClosed
from .triad import EvolutionAlgebra, WeightedDigraph, graph_from_algebra

StateSet = tuple[int, ...]

# entries at or below this count as zero in numeric power checks
POSITIVITY = 1e-12


def state_set(members: Iterable[int], n: Optional[int] = None) -> StateSet:
    s = tuple(sorted(set(int(m) for m in members)))
    if n is not None and s and (s[0] < 0 or s[-1] >= n):
        raise IndexOutOfRange(f"state set {s} not within 0..{n - 1}")
    return s


def _check_index(g: WeightedDigraph, i: int) -> int:
    if not 0 <= i < g.n:
        raise IndexOutOfRange(f"index {i} outside 0..{g.n - 1}")
    return i


def _nonempty(g: WeightedDigraph, c: Iterable[int]) -> StateSet:
    s = state_set(c, g.n)
    if not s:
        raise EmptySet("state set must be nonempty")
    return s


def communication_classes(g: WeightedDigraph) -> list[StateSet]:
    """Strongly connected components, ordered by smallest member.

    Iterative Tarjan; recursion depth would otherwise grow with ``n``.
    """
    n = g.n
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[StateSet] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, k = work.pop()
            if k == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            succ = g.successors(v)
            recursed = False
            while k < len(succ):
                w = succ[k]
                k += 1
                if index[w] == -1:
                    work.append((v, k))
                    work.append((w, 0))
                    recursed = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recursed:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(state_set(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return sorted(comps, key=lambda c: c[0])


def _reach(g: WeightedDigraph, sources: Iterable[int]) -> set[int]:
    seen = set(sources)
    queue = deque(seen)
    while queue:
        u = queue.popleft()
        for v in g.successors(u):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def is_accessible(g: WeightedDigraph, i: int, j: int) -> bool:
    """True iff ``j`` can be reached from ``i`` in zero or more steps."""
    _check_index(g, i)
    _check_index(g, j)
    return j in _reach(g, [i])


def is_closed(g: WeightedDigraph, c: Iterable[int]) -> bool:
    s = _nonempty(g, c)
    members = set(s)
    return all(v in members for u in s for v in g.successors(u))


def _leaving_edge(g: WeightedDigraph, s: StateSet) -> Optional[tuple[int, int]]:
    members = set(s)
    for u in s:
        for v in g.successors(u):
            if v not in members:
                return u, v
    return None


def forward_closure(g: WeightedDigraph, c: Iterable[int]) -> StateSet:
    """Smallest closed superset of ``c``."""
    s = _nonempty(g, c)
    return state_set(_reach(g, s))


def enumerate_closed_sets(g: WeightedDigraph, cap_dimension: int = 20) -> list[StateSet]:
    """All nonempty closed vertex sets, ordered by (size, members).

    Every closed set is a union of forward closures of communication
    classes, so the search runs over unions of those closures instead of
    all ``2**n`` subsets.
    """
    if g.n > cap_dimension:
        raise DimensionTooLarge(f"dimension {g.n} exceeds cap {cap_dimension}")
    closures = {frozenset(forward_closure(g, cls)) for cls in communication_classes(g)}
    found: set[frozenset] = set()
    frontier = set(closures)
    while frontier:
        found |= frontier
        frontier = {a | b for a in frontier for b in closures} - found
    result = [state_set(s) for s in found]
    for s in result:
        if not is_closed(g, s):
            raise AssertionError(f"generated set {s} is not closed")
    return sorted(result, key=lambda s: (len(s), s))


def subalgebra(
    alg: EvolutionAlgebra, c: Iterable[int], g: Optional[WeightedDigraph] = None
) -> EvolutionAlgebra:
    """Restriction of ``alg`` to the generators in ``c`` (must be closed).

    Closedness is judged on ``g`` when given (e.g. a graph built with a
    nonzero ``zero_tol``), otherwise on the exact-nonzero graph of ``alg``.
    """
    if g is None:
        g = graph_from_algebra(alg)
    s = _nonempty(g, c)
    bad = _leaving_edge(g, s)
    if bad is not None:
        raise NotClosed(*bad)
    return EvolutionAlgebra(alg.matrix.restrict(s))


def is_simple(alg: EvolutionAlgebra) -> bool:
    return len(communication_classes(graph_from_algebra(alg))) == 1


def is_primitive(chain: MarkovChain) -> Optional[int]:
    """Least ``n`` with every entry of ``P**n`` positive, or ``None``.

    Works on the boolean zero pattern so underflow cannot hide a
    positive entry; the search stops at Wielandt's bound
    ``(d - 1)**2 + 1``.
    """
    d = chain.n
    pattern = (chain.matrix.entries > 0).astype(np.int64)
    power = pattern.copy()
    for n in range(1, (d - 1) ** 2 + 2):
        if n > 1:
            power = ((power @ pattern) > 0).astype(np.int64)
        if power.all():
            return n
    return None


def classify_generators(g: WeightedDigraph) -> tuple[StateSet, StateSet]:
    """Split vertices into (transient, recurrent).

    In a finite chain a state is recurrent iff its communication class
    is closed.
    """
    recurrent = []
    for cls in communication_classes(g):
        if is_closed(g, cls):
            recurrent.extend(cls)
    rec = state_set(recurrent)
    trans = state_set(set(range(g.n)) - set(rec))
    return trans, rec


def _class_period(g: WeightedDigraph, members: StateSet) -> Optional[int]:
    inside = set(members)
    root = members[0]
    level = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in g.successors(u):
            if v in inside and v not in level:
                level[v] = level[u] + 1
                queue.append(v)
    p = 0
    for u in members:
        for v in g.successors(u):
            if v in inside:
                p = gcd(p, level[u] + 1 - level[v])
    return p or None


def period(g: WeightedDigraph, j: int) -> Optional[int]:
    """gcd of the lengths of closed walks through ``j``; ``None`` if there are none."""
    _check_index(g, j)
    for cls in communication_classes(g):
        if j in cls:
            return _class_period(g, cls)
    raise AssertionError("unreachable")


def idempotents(alg: EvolutionAlgebra, tol: float = DEFAULT_TOL) -> StateSet:
    """Generators with ``e_i^2 = e_i`` within ``tol`` (absorbing states)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = alg.matrix.entries
    out = []
    for i in range(alg.n):
        row = a[i].copy()
        diag = row[i]
        row[i] = 0.0
        if abs(diag - 1.0) <= tol and np.all(np.abs(row) <= tol):
            out.append(i)
    return tuple(out)


@dataclass(frozen=True)
class CommClass:
    members: StateSet
    closed: bool
    recurrent: bool
    period: Optional[int]
    # closed only because some member has no out-edges (zero row)
    degenerate: bool = False


@dataclass(frozen=True)
class ClassPartition:
    classes: tuple[CommClass, ...]
    transient_states: StateSet
    recurrent_states: StateSet

    @property
    def closed_classes(self) -> tuple[CommClass, ...]:
        return tuple(c for c in self.classes if c.closed)


def canonical_partition(g: WeightedDigraph) -> ClassPartition:
    classes = []
    for cls in communication_classes(g):
        closed = is_closed(g, cls)
        degenerate = any(not g.successors(u) for u in cls)
        classes.append(CommClass(cls, closed, closed, _class_period(g, cls), degenerate))
    transient, recurrent = classify_generators(g)
    return ClassPartition(tuple(classes), transient, recurrent)


def labels_of(labels: Sequence[str], s: Iterable[int]) -> list[str]:
    return [labels[k] for k in s]
