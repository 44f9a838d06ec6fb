import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st

from evomarkov import catalog
from evomarkov.core import MarkovChain, identity, make_structure_matrix, matrix_power
from evomarkov.errors import DimensionTooLarge, EmptySet, IndexOutOfRange, NotClosed
from evomarkov.structure import (
    POSITIVITY,
    canonical_partition,
    classify_generators,
    communication_classes,
    enumerate_closed_sets,
    forward_closure,
    idempotents,
    is_accessible,
    is_closed,
    is_primitive,
    is_simple,
    period,
    subalgebra,
)
from evomarkov.triad import EvolutionAlgebra, WeightedDigraph, algebra_from_graph, graph_from_algebra

import oracles
from conftest import adj_of, digraphs, labels_to_idx, stochastic_matrices


def G(name):
    return graph_from_algebra(EvolutionAlgebra(catalog.matrix(name)))


def A(name):
    return EvolutionAlgebra(catalog.matrix(name))


E = labels_to_idx


# -- communication classes -------------------------------------------------

def test_classes_eightgen():
    # the prose groups e1, e2, e4 into one class; the matrix gives {e1,e2} and {e4}
    assert communication_classes(G("eightgen")) == [
        E(["e1", "e2"]), E(["e3", "e6"]), E(["e4"]), E(["e5"]), E(["e7", "e8"])
    ]


def test_classes_period2_single():
    assert communication_classes(G("period2")) == [(0, 1, 2)]


def test_classes_edgeless():
    assert communication_classes(WeightedDigraph(("a", "b", "c"), ())) == [(0,), (1,), (2,)]


@given(digraphs(max_dim=7))
def test_classes_match_reachability_oracle(g):
    assert communication_classes(g) == oracles.scc_by_reachability(adj_of(g))


@given(digraphs(max_dim=7))
def test_classes_match_networkx(g):
    dg = nx.DiGraph()
    dg.add_nodes_from(range(g.n))
    dg.add_edges_from((u, v) for u, v, _ in g.edges)
    expected = sorted((tuple(sorted(c)) for c in nx.strongly_connected_components(dg)),
                      key=lambda c: c[0])
    assert communication_classes(g) == expected


def test_classes_on_long_chain_do_not_recurse():
    n = 5000
    g = WeightedDigraph.unweighted([f"v{k}" for k in range(n)],
                                   [(k, k + 1) for k in range(n - 1)] + [(n - 1, 0)])
    assert communication_classes(g) == [tuple(range(n))]


# -- accessibility ---------------------------------------------------------

def test_accessibility_absorbing3():
    g = G("absorbing3")
    assert is_accessible(g, 0, 2)
    assert not is_accessible(g, 2, 0)


def test_accessibility_reflexive():
    g = WeightedDigraph(("a", "b"), ())
    assert is_accessible(g, 0, 0) and is_accessible(g, 1, 1)


def test_accessibility_eightgen():
    assert not is_accessible(G("eightgen"), 1, 3)


def test_accessibility_index_check():
    with pytest.raises(IndexOutOfRange):
        is_accessible(G("absorbing3"), 0, 3)


@given(digraphs(max_dim=6))
def test_accessibility_matches_warshall(g):
    r = oracles.reachability(adj_of(g))
    for i in range(g.n):
        for j in range(g.n):
            assert is_accessible(g, i, j) == r[i][j]


# -- closedness ------------------------------------------------------------

def test_closed_sets_worked_examples():
    assert is_closed(G("sixgen"), E(["e4", "e5", "e6"]))
    assert is_closed(G("eightgen"), E(["e3", "e6"]))
    assert not is_closed(G("absorbing3"), E(["e1"]))


def test_closed_empty_set():
    with pytest.raises(EmptySet):
        is_closed(G("absorbing3"), [])


def test_sixgen_cross_block_zero_in_all_powers():
    M = catalog.matrix("sixgen")
    for m in range(1, 13):
        P = matrix_power(M, m).matrix.entries
        assert np.all(P[3:, :3] == 0)


@given(digraphs(max_dim=5), st.data())
def test_closed_iff_no_leak_in_any_power(g, data):
    subset = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1))
    M = algebra_from_graph(g).matrix
    # use |weights| so cancellation cannot hide a walk
    Mabs = make_structure_matrix(np.abs(M.entries).tolist())
    outside = [j for j in range(g.n) if j not in subset]
    leak = any(
        matrix_power(Mabs, m).matrix.entries[np.ix_(sorted(subset), outside)].max(initial=0) > POSITIVITY
        for m in range(1, g.n + 1)
    )
    assert is_closed(g, subset) == (not leak)


@given(stochastic_matrices(max_dim=6), st.data())
def test_closed_iff_restriction_keeps_mass(M, data):
    subset = sorted(data.draw(st.sets(st.integers(0, M.n - 1), min_size=1)))
    g = graph_from_algebra(EvolutionAlgebra(M))
    restricted = M.entries[np.ix_(subset, subset)]
    keeps_mass = bool(np.all(np.abs(restricted.sum(axis=1) - 1) <= 1e-9))
    assert is_closed(g, subset) == keeps_mass


# -- forward closure -------------------------------------------------------

def test_closure_eightgen_from_e1():
    # e4 and e5 are not reachable from e1 in the printed matrix
    assert forward_closure(G("eightgen"), E(["e1"])) == E(["e1", "e2", "e3", "e6", "e7", "e8"])


def test_closure_absorbing3_from_e2():
    assert forward_closure(G("absorbing3"), E(["e2"])) == (0, 1, 2)


@given(digraphs(max_dim=6), st.data())
def test_closure_properties(g, data):
    c = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1))
    d = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1))
    cl = forward_closure(g, c)
    assert is_closed(g, cl)
    assert set(c) <= set(cl)
    assert forward_closure(g, cl) == cl
    assert (cl == tuple(sorted(c))) == is_closed(g, c)
    assert set(cl) <= set(forward_closure(g, set(c) | set(d)))


# -- enumeration of closed sets -------------------------------------------

def test_enumerate_absorbing3():
    assert enumerate_closed_sets(G("absorbing3")) == [(2,), (0, 2), (0, 1, 2)]


def test_enumerate_strongly_connected():
    assert enumerate_closed_sets(G("period2")) == [(0, 1, 2)]
    assert enumerate_closed_sets(G("strong4")) == [(0, 1, 2, 3)]


def test_enumerate_eightgen():
    expected = [tuple(c) for c in oracles.all_closed_subsets(adj_of(G("eightgen")))]
    expected.sort(key=lambda s: (len(s), s))
    found = enumerate_closed_sets(G("eightgen"))
    assert found == expected
    for c in (["e5"], ["e3", "e6"], ["e7", "e8"]):
        assert E(c) in found


def test_enumerate_cap():
    with pytest.raises(DimensionTooLarge):
        enumerate_closed_sets(G("eightgen"), cap_dimension=7)


@given(digraphs(max_dim=7))
def test_enumerate_matches_exhaustive_search(g):
    expected = sorted(oracles.all_closed_subsets(adj_of(g)), key=lambda s: (len(s), s))
    assert enumerate_closed_sets(g) == expected


@given(digraphs(max_dim=6), st.data())
def test_union_of_closed_sets_is_closed(g, data):
    sets = enumerate_closed_sets(g)
    a = data.draw(st.sampled_from(sets))
    b = data.draw(st.sampled_from(sets))
    assert is_closed(g, set(a) | set(b))


# -- subalgebras -----------------------------------------------------------

def test_subalgebra_eightgen():
    sub = subalgebra(A("eightgen"), E(["e3", "e6"]))
    assert sub.generators == ("e3", "e6")
    assert sub.matrix.tolist() == [[0.5, 0.5], [0.3, 0.7]]
    assert sub.laws() == ["e3^2 = 0.5 e3 + 0.5 e6", "e6^2 = 0.3 e3 + 0.7 e6"]


def test_subalgebra_full_set_is_whole_algebra():
    alg = A("sevengen")
    assert subalgebra(alg, range(7)) == alg


def test_subalgebra_not_closed():
    with pytest.raises(NotClosed) as info:
        subalgebra(A("eightgen"), E(["e1", "e2"]))
    assert info.value.source in (0, 1)
    assert info.value.target not in (0, 1)


# -- simplicity and primitivity -------------------------------------------

def test_simple_examples():
    assert is_simple(A("period2"))
    assert not is_simple(A("sixgen"))
    assert not is_simple(A("eightgen"))
    assert is_simple(EvolutionAlgebra(identity(1)))


@given(digraphs(max_dim=6))
def test_simplicity_three_ways(g):
    alg = algebra_from_graph(g)
    one_class = len(communication_classes(g)) == 1
    only_full = enumerate_closed_sets(g) == [tuple(range(g.n))]
    assert is_simple(alg) == one_class == only_full


def test_primitive_examples():
    assert is_primitive(catalog.chain("period2")) is None
    assert is_primitive(catalog.chain("strong4")) == 3
    assert is_primitive(MarkovChain(identity(1))) == 1
    assert is_primitive(MarkovChain(identity(2))) is None


@given(stochastic_matrices(max_dim=5))
def test_primitive_index_matches_numeric_powers(M):
    chain = MarkovChain(M)
    d = M.n
    expected = None
    for n in range(1, (d - 1) ** 2 + 2):
        if all(x > 0 for row in oracles.naive_power(M.tolist(), n) for x in row):
            expected = n
            break
    # underflow cannot bite at these sizes, so numeric and boolean agree
    assert is_primitive(chain) == expected


@given(stochastic_matrices(max_dim=6))
def test_primitive_implies_simple_and_converse_fails_only_when_periodic(M):
    chain = MarkovChain(M)
    alg = EvolutionAlgebra(M)
    g = graph_from_algebra(alg)
    idx = is_primitive(chain)
    if idx is not None:
        assert is_simple(alg)
    if is_simple(alg) and idx is None:
        assert period(g, 0) is None or period(g, 0) > 1
    if is_simple(alg) and period(g, 0) == 1:
        assert idx is not None


# -- transient / recurrent -------------------------------------------------

def test_classify_sevengen():
    assert classify_generators(G("sevengen")) == (E(["e1", "e3", "e6"]), E(["e2", "e4", "e5", "e7"]))


def test_classify_eightgen():
    # the prose lists the recurrent set once without e8; the matrix forces it in
    trans, rec = classify_generators(G("eightgen"))
    assert trans == E(["e1", "e2", "e4"])
    assert rec == E(["e3", "e5", "e6", "e7", "e8"])


@pytest.mark.parametrize("n", [1, 3, 6])
def test_classify_identity(n):
    g = graph_from_algebra(EvolutionAlgebra(identity(n)))
    assert classify_generators(g) == ((), tuple(range(n)))


@given(digraphs(max_dim=7))
def test_classification_matches_lemma(g):
    # recurrent iff every generator reachable from i can reach i back
    r = oracles.reachability(adj_of(g))
    trans, rec = classify_generators(g)
    for i in range(g.n):
        recurrent = all(r[j][i] for j in range(g.n) if r[i][j])
        assert (i in rec) == recurrent
    assert sorted(trans + rec) == list(range(g.n))
    if rec:
        assert is_closed(g, rec)


# -- periods ---------------------------------------------------------------

def test_period2_all_two():
    g = G("period2")
    assert [period(g, j) for j in range(3)] == [2, 2, 2]


def test_period_absorbing_state():
    assert period(G("absorbing3"), 2) == 1


def test_period_of_vertex_on_no_cycle():
    g = graph_from_algebra(EvolutionAlgebra.from_rows([[0, 1], [0, 1]]))
    assert period(g, 0) is None
    assert period(g, 1) == 1


def test_period_sixgen_three():
    g = G("sixgen")
    assert {period(g, j) for j in range(6)} == {3}


def test_period_index_check():
    with pytest.raises(IndexOutOfRange):
        period(G("period2"), 5)


@given(digraphs(max_dim=5))
def test_period_matches_closed_walk_lengths(g):
    adj = adj_of(g)
    for j in range(g.n):
        lengths = oracles.bool_power_diag_lengths(adj, j, 12)
        if lengths:
            assert period(g, j) == oracles.gcd_all(lengths)
        else:
            assert period(g, j) is None


@given(digraphs(max_dim=7))
def test_period_is_a_class_property(g):
    for cls in communication_classes(g):
        assert len({period(g, j) for j in cls}) == 1


# -- idempotents -----------------------------------------------------------

def test_idempotents_examples():
    assert idempotents(A("absorbing3"), 1e-9) == (2,)
    assert idempotents(A("eightgen"), 1e-9) == (4,)
    assert idempotents(A("strong4"), 1e-9) == ()


@given(stochastic_matrices(max_dim=6))
def test_absorbing_triple(M):
    alg = EvolutionAlgebra(M)
    g = graph_from_algebra(alg)
    ids = idempotents(alg, 1e-9)
    for i in range(M.n):
        assert (i in ids) == (abs(M.entries[i, i] - 1) <= 1e-9) == is_closed(g, [i])


# -- canonical partition ---------------------------------------------------

def test_partition_eightgen():
    part = canonical_partition(G("eightgen"))
    assert part.transient_states == E(["e1", "e2", "e4"])
    assert [c.members for c in part.closed_classes] == [E(["e3", "e6"]), E(["e5"]), E(["e7", "e8"])]
    for c in part.closed_classes:
        assert is_simple(subalgebra(A("eightgen"), c.members))


def test_partition_period2():
    part = canonical_partition(G("period2"))
    assert len(part.classes) == 1
    c = part.classes[0]
    assert c.closed and c.recurrent and c.period == 2
    assert part.transient_states == ()


def test_partition_edgeless():
    part = canonical_partition(WeightedDigraph(("a", "b"), ()))
    assert [c.members for c in part.classes] == [(0,), (1,)]
    for c in part.classes:
        assert c.closed and c.recurrent and c.period is None and c.degenerate


@given(digraphs(max_dim=7))
def test_partition_invariants(g):
    part = canonical_partition(g)
    members = [k for c in part.classes for k in c.members]
    assert sorted(members) == list(range(g.n))
    assert set(part.transient_states).isdisjoint(part.recurrent_states)
    assert set(part.transient_states) | set(part.recurrent_states) == set(range(g.n))
    closed_union = {k for c in part.classes if c.closed for k in c.members}
    assert closed_union == set(part.recurrent_states)
    alg = algebra_from_graph(g)
    for c in part.classes:
        assert c.recurrent == c.closed
        has_cycle = any(g.has_edge(u, v) for u in c.members for v in c.members)
        assert (c.period is not None) == has_cycle
        if c.closed:
            assert is_simple(subalgebra(alg, c.members))
