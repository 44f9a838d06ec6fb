"""Finite Markov chains, evolution algebras and weighted digraphs.

The three objects share one structure matrix; this package converts
between them and decides their structural properties (closed sets,
simplicity, transient/recurrent generators, periods, idempotents).
"""
from .core import (
    DEFAULT_TOL,
    MarkovChain,
    PowerResult,
    StructureMatrix,
    identity,
    is_row_stochastic,
    make_structure_matrix,
    matrix_power,
)
from .errors import (
    DegenerateRow,
    DimensionTooLarge,
    DuplicateLabel,
    EmptySet,
    EvoMarkovError,
    GuardExceeded,
    IndexOutOfRange,
    InvalidWalk,
    NonFiniteEntry,
    NonSquare,
    NotClosed,
    NotMarkov,
    ParseError,
    TooLarge,
    ValidationError,
)
from .triad import (
    EvolutionAlgebra,
    WeightedDigraph,
    algebra_from_chain,
    algebra_from_graph,
    chain_from_algebra,
    graph_from_algebra,
    graph_from_chain,
    is_graphicable,
    is_markov,
)

__version__ = "0.1.0"
