import pytest
from hypothesis import given

from cmlkit.errors import CapExceeded, DisconnectedInput, InvalidInstance
from cmlkit.generators import cycle_graph, path_graph
from cmlkit.graph import Graph
from cmlkit.oracles import mutually_induced, oracle_idp, oracle_max_leaf, oracle_sigma

from helpers import connected_graphs, graphs


def complete(n):
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


class TestOracleSigma:
    def test_c5(self):
        assert oracle_sigma(cycle_graph(5), {0})[0] == 2

    def test_p6_induced_matching(self):
        # {1,2,5,6} in 1-indexed ids is another optimum; this is the smallest in lex order
        assert oracle_sigma(path_graph(6), {1}) == (4, (0, 1, 3, 4))

    @pytest.mark.parametrize("n", [1, 4, 7])
    def test_clique_independence(self, n):
        assert oracle_sigma(complete(n), {0})[0] == 1

    def test_k4_triangle(self):
        assert oracle_sigma(complete(4), {0, 1, 2}) == (3, (0, 1, 2))

    def test_cap(self):
        with pytest.raises(CapExceeded):
            oracle_sigma(Graph(21), {0})

    @given(graphs(max_n=7))
    def test_mis_agrees_with_networkx(self, g):
        import networkx as nx

        G = nx.Graph()
        G.add_nodes_from(range(g.n))
        G.add_edges_from(g.edges)
        comp = nx.complement(G)
        _, w = nx.max_weight_clique(comp, weight=None)
        assert oracle_sigma(g, {0})[0] == w


class TestMutuallyInduced:
    def test_chord_breaks_inducedness(self):
        g = Graph(3, [(0, 1), (1, 2), (0, 2)])
        assert not mutually_induced(g, [(0, 1, 2)])

    def test_edge_between_paths(self):
        assert not mutually_induced(path_graph(4), [(0, 1), (2, 3)])

    def test_shared_vertex(self):
        assert not mutually_induced(path_graph(5), [(0, 1), (1, 2)])

    def test_non_edge_step(self):
        assert not mutually_induced(path_graph(4), [(0, 2)])

    def test_valid(self):
        assert mutually_induced(cycle_graph(6), [(0, 1), (3, 4)])


class TestOracleIdp:
    def test_p5(self):
        assert oracle_idp(path_graph(5), [(0, 4)]) == [(0, 1, 2, 3, 4)]

    def test_c6_antipodal(self):
        assert oracle_idp(cycle_graph(6), [(0, 3), (1, 4)]) is None

    def test_disconnected(self):
        assert oracle_idp(Graph(4, [(0, 1), (2, 3)]), [(0, 3)]) is None

    def test_bad_pairs(self):
        with pytest.raises(InvalidInstance):
            oracle_idp(path_graph(4), [(0, 1), (1, 2)])

    def test_caps(self):
        with pytest.raises(CapExceeded):
            oracle_idp(path_graph(17), [(0, 16)])
        with pytest.raises(CapExceeded):
            oracle_idp(path_graph(10), [(0, 1), (2, 3), (4, 5), (6, 7)])


class TestOracleMaxLeaf:
    def test_k4(self):
        assert oracle_max_leaf(complete(4)) == 3

    @pytest.mark.parametrize("n", [3, 5, 8])
    def test_cycles(self, n):
        assert oracle_max_leaf(cycle_graph(n)) == 2

    def test_star(self):
        assert oracle_max_leaf(Graph(5, [(0, v) for v in range(1, 5)])) == 4

    def test_disconnected(self):
        with pytest.raises(DisconnectedInput):
            oracle_max_leaf(Graph(3, [(0, 1)]))

    @given(connected_graphs(min_n=2, max_n=7))
    def test_tree_leaf_count_bounds(self, g):
        assert max(2, g.max_degree()) <= oracle_max_leaf(g) <= max(2, g.n - 1)
