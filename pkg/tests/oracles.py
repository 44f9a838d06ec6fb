"""Slow, independent reference computations used only by the tests.

None of these call into evomarkov's algorithms; they work on plain
nested lists so a bug in the library cannot leak into its own oracle.
"""
from functools import reduce
from itertools import combinations
from math import gcd


def matmul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def naive_power(a, n):
    size = len(a)
    out = [[1.0 if i == j else 0.0 for j in range(size)] for i in range(size)]
    for _ in range(n):
        out = matmul(out, a)
    return out


def adjacency(rows, zero_tol=0.0):
    return [[abs(x) > zero_tol for x in r] for r in rows]


def reachability(adj):
    """Warshall transitive closure; reflexive (zero-step paths count)."""
    n = len(adj)
    r = [[adj[i][j] or i == j for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            if r[i][k]:
                for j in range(n):
                    if r[k][j]:
                        r[i][j] = True
    return r


def scc_by_reachability(adj):
    n = len(adj)
    r = reachability(adj)
    classes = []
    seen = set()
    for i in range(n):
        if i in seen:
            continue
        cls = tuple(j for j in range(n) if r[i][j] and r[j][i])
        seen.update(cls)
        classes.append(cls)
    return classes


def closed_by_definition(adj, subset):
    s = set(subset)
    return all(not adj[i][j] for i in s for j in range(len(adj)) if j not in s)


def all_closed_subsets(adj):
    n = len(adj)
    out = []
    for size in range(1, n + 1):
        for c in combinations(range(n), size):
            if closed_by_definition(adj, c):
                out.append(c)
    return out


def bool_power_diag_lengths(adj, j, n_max):
    """Lengths ``1..n_max`` of closed walks through ``j``, via boolean powers."""
    n = len(adj)
    cur = [row[:] for row in adj]
    lengths = []
    for length in range(1, n_max + 1):
        if cur[j][j]:
            lengths.append(length)
        cur = [[any(cur[i][k] and adj[k][m] for k in range(n)) for m in range(n)]
               for i in range(n)]
    return lengths


def gcd_all(values):
    return reduce(gcd, values, 0)


def all_walks(adj, i, j, n):
    """Every length-``n`` vertex sequence from ``i`` to ``j``, by brute product."""
    size = len(adj)
    out = []

    def rec(path):
        if len(path) == n + 1:
            if path[-1] == j:
                out.append(tuple(path))
            return
        for v in range(size):
            if adj[path[-1]][v]:
                rec(path + [v])

    rec([i])
    return out
