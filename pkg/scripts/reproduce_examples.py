"""Print the structural facts of every bundled example matrix.

    python3 scripts/reproduce_examples.py [--power N]
"""
import argparse

from evomarkov import catalog
from evomarkov.core import format_number, matrix_power
from evomarkov.structure import canonical_partition, idempotents, is_primitive, is_simple, labels_of
from evomarkov.triad import EvolutionAlgebra, graph_from_algebra, is_markov


def describe(name, power):
    M = catalog.matrix(name)
    alg = EvolutionAlgebra(M)
    g = graph_from_algebra(alg)
    part = canonical_partition(g)

    def braces(s):
        return "{" + ", ".join(labels_of(M.labels, s)) + "}"

    print(f"== {name} ({M.n} generators)")
    print("  markov:", is_markov(alg, 1e-9), " simple:", is_simple(alg))
    for c in part.classes:
        kind = "closed" if c.closed else "open"
        print(f"  class {braces(c.members)}: {kind}, period {c.period}")
    print("  transient:", braces(part.transient_states), " recurrent:", braces(part.recurrent_states))
    print("  idempotents:", braces(idempotents(alg)))
    if is_markov(alg, 1e-9):
        print("  primitivity index:", is_primitive(catalog.chain(name)))
        P = matrix_power(M, power).matrix
        for label, row in zip(P.labels, P.entries):
            print(f"  P^{power}[{label}] =", " ".join(format_number(x) for x in row))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--power", type=int, default=2)
    args = parser.parse_args()
    for name in catalog.NAMES:
        describe(name, args.power)


if __name__ == "__main__":
    main()
