"""Check the walk-sum identity on random row-stochastic matrices.

Reports the worst |sum of walk weights - power entry| per dimension.

    python3 scripts/walk_theorem_sweep.py --count 200 --max-dim 6 --max-length 6
"""
import argparse
import time

import numpy as np

from evomarkov.core import make_structure_matrix
from evomarkov.triad import EvolutionAlgebra, graph_from_algebra
from evomarkov.walks import verify_walk_theorem


def random_stochastic(rng, n, density):
    mask = rng.random((n, n)) < density
    mask[np.arange(n), rng.integers(n, size=n)] = True
    w = rng.random((n, n)) * mask
    return w / w.sum(axis=1, keepdims=True)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=200)
    parser.add_argument("--max-dim", type=int, default=6)
    parser.add_argument("--max-length", type=int, default=6)
    parser.add_argument("--density", type=float, default=0.5)
    parser.add_argument("--tol", type=float, default=1e-9)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    worst = {}
    failures = 0
    start = time.perf_counter()
    for _ in range(args.count):
        n = int(rng.integers(1, args.max_dim + 1))
        M = make_structure_matrix(random_stochastic(rng, n, args.density).tolist())
        reports = verify_walk_theorem(graph_from_algebra(EvolutionAlgebra(M)), args.max_length, args.tol)
        failures += sum(not r.ok for r in reports)
        worst[n] = max(worst.get(n, 0.0), max(r.abs_error for r in reports))
    for n in sorted(worst):
        print(f"dim {n}: max abs error {worst[n]:.3e}")
    print(f"{args.count} matrices, {failures} failures, {time.perf_counter() - start:.2f}s")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
