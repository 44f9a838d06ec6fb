"""Worked example matrices, keyed by short names.

``strong4``    strongly connected 4-state chain with self-loops
``absorbing3`` 3-state chain, ``e3`` absorbing
``nonmarkov3`` evolution algebra that is not Markov (row sums 1.37, 1, 1.3)
``sixgen``     6 generators, ``{e4, e5, e6}`` closed
``sevengen``   7 generators, transient ``{e1, e3, e6}``
``period2``    irreducible, every generator has period 2
``eightgen``   8 generators, three closed classes
"""
from .core import MarkovChain, StructureMatrix, make_structure_matrix

ROWS = {
    "strong4": [
        [0.5, 0.2, 0, 0.3],
        [0.1, 0, 0.9, 0],
        [0, 0, 0.4, 0.6],
        [0, 0.15, 0, 0.85],
    ],
    "absorbing3": [
        [0.5, 0, 0.5],
        [0.3, 0, 0.7],
        [0, 0, 1],
    ],
    "nonmarkov3": [
        [0.25, 0.3, 0.82],
        [0, 0.37, 0.63],
        [1.3, 0, 0],
    ],
    "sixgen": [
        [0, 0.3, 0, 0, 0, 0.7],
        [0, 0, 1, 0, 0, 0],
        [0.8, 0, 0, 0.2, 0, 0],
        [0, 0, 0, 0, 0, 1],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 1, 0],
    ],
    "sevengen": [
        [0.4, 0.2, 0.2, 0, 0, 0, 0.2],
        [0, 0.7, 0, 0, 0.3, 0, 0],
        [0.3, 0, 0.3, 0.2, 0.1, 0, 0.1],
        [0, 0, 0, 0.9, 0, 0, 0.1],
        [0, 0.5, 0, 0, 0.5, 0, 0],
        [0, 0.3, 0, 0.5, 0.1, 0.1, 0],
        [0, 0, 0, 0.1, 0, 0, 0.9],
    ],
    "period2": [
        [0, 1, 0],
        [0.17, 0, 0.83],
        [0, 1, 0],
    ],
    "eightgen": [
        [0.4, 0.2, 0, 0, 0, 0.2, 0.2, 0],
        [0.3, 0.3, 0.1, 0, 0, 0, 0.1, 0.2],
        [0, 0, 0.5, 0, 0, 0.5, 0, 0],
        [0, 0, 0.1, 0.1, 0, 0.3, 0, 0.5],
        [0, 0, 0, 0, 1, 0, 0, 0],
        [0, 0, 0.3, 0, 0, 0.7, 0, 0],
        [0, 0, 0, 0, 0, 0, 0.8, 0.2],
        [0, 0, 0, 0, 0, 0, 0.2, 0.8],
    ],
}

NAMES = tuple(ROWS)
MARKOV_NAMES = tuple(k for k in ROWS if k != "nonmarkov3")


def matrix(name: str) -> StructureMatrix:
    return make_structure_matrix(ROWS[name])


def chain(name: str) -> MarkovChain:
    return MarkovChain(matrix(name))
