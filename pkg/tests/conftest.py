import numpy as np
import pytest
from hypothesis import settings, strategies as st

from evomarkov import catalog
from evomarkov.core import MarkovChain, make_structure_matrix
from evomarkov.triad import EvolutionAlgebra, WeightedDigraph, graph_from_algebra

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def random_stochastic(rng, n, density=0.6):
    """Row-stochastic ``n x n`` matrix with a random zero pattern."""
    mask = rng.random((n, n)) < density
    for i in range(n):
        if not mask[i].any():
            mask[i, rng.integers(n)] = True
    w = rng.random((n, n)) * mask
    w[mask & (w == 0)] = 0.5
    rows = w / w.sum(axis=1, keepdims=True)
    return rows


def random_digraph(rng, n, density):
    adj = rng.random((n, n)) < density
    vertices = tuple(f"e{k + 1}" for k in range(n))
    edges = [(i, j, 1.0) for i in range(n) for j in range(n) if adj[i, j]]
    return WeightedDigraph(vertices, edges)


@st.composite
def stochastic_matrices(draw, max_dim=5, min_dim=1):
    n = draw(st.integers(min_dim, max_dim))
    seed = draw(st.integers(0, 2**32 - 1))
    density = draw(st.sampled_from([0.2, 0.4, 0.7, 1.0]))
    rows = random_stochastic(np.random.default_rng(seed), n, density)
    return make_structure_matrix(rows.tolist())


@st.composite
def digraphs(draw, max_dim=6, min_dim=1):
    n = draw(st.integers(min_dim, max_dim))
    adj = draw(st.lists(st.lists(st.booleans(), min_size=n, max_size=n), min_size=n, max_size=n))
    weights = draw(st.lists(st.sampled_from([0.1, 0.25, 0.5, 1.0, 2.0, -0.3]),
                            min_size=n * n, max_size=n * n))
    vertices = tuple(f"e{k + 1}" for k in range(n))
    edges = [(i, j, weights[i * n + j]) for i in range(n) for j in range(n) if adj[i][j]]
    return WeightedDigraph(vertices, edges)


def adj_of(g):
    return [[g.has_edge(i, j) for j in range(g.n)] for i in range(g.n)]


def labels_to_idx(names):
    return tuple(int(x[1:]) - 1 for x in names)


@pytest.fixture(params=catalog.NAMES)
def example_name(request):
    return request.param


@pytest.fixture
def algebras():
    return {k: EvolutionAlgebra(catalog.matrix(k)) for k in catalog.NAMES}


@pytest.fixture
def graphs():
    return {k: graph_from_algebra(EvolutionAlgebra(catalog.matrix(k))) for k in catalog.NAMES}


@pytest.fixture
def chains():
    return {k: MarkovChain(catalog.matrix(k)) for k in catalog.MARKOV_NAMES}


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "ACCEPTANCE", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
