from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cmlkit.contraction import star_sequence, verify_witness
from cmlkit.errors import InvalidWitness
from cmlkit.generators import clique_column_grid, cycle_graph, path_graph, path_sequence, pohoata_davies
from cmlkit.graph import Graph, connected_components
from cmlkit.separator import balanced_separator, dominated_separator, is_balanced

from helpers import graphs_with_sequences


def dominated_by(g, D):
    out = set()
    for d in D:
        out |= g.adj[d]
    return out


def heaviest_share(g, S):
    W = g.total_weight()
    rest = set(range(g.n)) - set(S)
    return max((g.total_weight(c) / W for c in connected_components(g, rest)), default=Fraction(0))


class TestDominatedSeparator:
    def test_single_vertex(self):
        res = dominated_separator(Graph(1), star_sequence(Graph(1)), 1)
        assert res.S == set() and res.D == set() and res.label == "trivial"

    @pytest.mark.parametrize("n", [3, 7, 20])
    def test_path(self, n):
        g = path_graph(n)
        res = dominated_separator(g, path_sequence(n), 2)
        assert res.S <= dominated_by(g, res.D) and len(res.D) <= 2
        assert heaviest_share(g, res.S) <= 1 - Fraction(1, 7)

    def test_pd_grid(self):
        g, seq = pohoata_davies(5, 0)
        res = dominated_separator(g, seq, 3)
        assert res.S <= dominated_by(g, res.D) and len(res.D) <= 3
        assert heaviest_share(g, res.S) <= 1 - Fraction(1, 9)

    def test_k_below_witness(self):
        g = cycle_graph(6)
        with pytest.raises(InvalidWitness):
            dominated_separator(g, star_sequence(g), 1)

    @given(graphs_with_sequences(min_n=2, max_n=8))
    def test_guarantees(self, gs):
        g, seq = gs
        k = verify_witness(g, seq).witnessed
        res = dominated_separator(g, seq, k)
        assert res.S <= dominated_by(g, res.D)
        assert len(res.D) <= k
        assert heaviest_share(g, res.S) <= 1 - Fraction(1, 2 * k + 3)


class TestBalancedSeparator:
    def test_edgeless(self):
        g = Graph(5)
        res = balanced_separator(g, star_sequence(g), 1)
        assert res.S == set() and res.D == set()

    def test_clique_column(self):
        g, seq = clique_column_grid(8, 8)
        res = balanced_separator(g, seq, 3)
        assert len(res.D) <= 15
        assert res.S <= dominated_by(g, res.D)
        assert heaviest_share(g, res.S) <= Fraction(2, 3)

    def test_heavy_vertex_goes_into_separator(self):
        g, seq = pohoata_davies(4, 0)
        ws = [Fraction(1)] * g.n
        ws[5] = 9 * (g.n - 1)
        g = g.with_weights(ws)
        res = balanced_separator(g, seq, 3)
        assert 5 in res.S
        assert heaviest_share(g, res.S) <= Fraction(2, 3)

    def test_exact_rational_threshold(self):
        # the heaviest component sits exactly at two thirds
        g = Graph(3, [(0, 1)], [1, 1, 1])
        res = balanced_separator(g, star_sequence(g), 2)
        assert heaviest_share(g, res.S) == Fraction(2, 3) and not res.S

    @given(graphs_with_sequences(min_n=2, max_n=8))
    def test_guarantees_unit_weights(self, gs):
        g, seq = gs
        k = verify_witness(g, seq).witnessed
        res = balanced_separator(g, seq, k)
        assert res.S <= dominated_by(g, res.D)
        assert len(res.D) <= k * (k + 2)
        assert heaviest_share(g, res.S) <= Fraction(2, 3)

    @given(graphs_with_sequences(min_n=2, max_n=8), st.data())
    def test_guarantees_random_weights(self, gs, data):
        g, seq = gs
        ws = data.draw(st.lists(st.fractions(min_value=Fraction(1, 10), max_value=10), min_size=g.n, max_size=g.n))
        g = g.with_weights(ws)
        k = verify_witness(g, seq).witnessed
        res = balanced_separator(g, seq, k)
        assert res.S <= dominated_by(g, res.D)
        assert len(res.D) <= k * (k + 2)
        W = g.total_weight()
        if not any(not g.adj[v] and 3 * g.weight(v) > 2 * W for v in range(g.n)):
            assert heaviest_share(g, res.S) <= Fraction(2, 3)
        assert is_balanced(g, res.S, Fraction(2, 3))
