import pytest
from hypothesis import given
from hypothesis import strategies as st

from cmlkit.contraction import SequenceLevels, star_sequence, verify_witness
from cmlkit.errors import InvalidInstance
from cmlkit.generators import clique_column_grid, cycle_graph, path_graph, path_sequence, pohoata_davies
from cmlkit.graph import Graph
from cmlkit.oracles import oracle_sigma
from cmlkit.sigma import SigmaSpec, enumerate_sigma_separators, is_sigma_set, replay_certificate, solve_sigma

from helpers import graphs_with_sequences

SIGMAS = [(0,), (1,), (0, 1), (2,), (0, 2), (1, 2), (0, 1, 2)]


def complete(n):
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


class TestSigmaSpec:
    def test_parse(self):
        spec = SigmaSpec.parse("2,0, 1")
        assert spec.sigma == {0, 1, 2} and spec.alpha == 2
        assert 1 in spec and str(spec) == "{0,1,2}"

    @pytest.mark.parametrize("text", ["", "a", "-1", "1,,x"])
    def test_bad_lists(self, text):
        with pytest.raises(InvalidInstance):
            SigmaSpec.parse(text)

    def test_alpha_above_n(self):
        with pytest.raises(InvalidInstance):
            solve_sigma(path_graph(2), path_sequence(2), SigmaSpec([3]))


class TestKnownValues:
    def test_mis_of_c5(self):
        g = cycle_graph(5)
        assert solve_sigma(g, star_sequence(g), SigmaSpec([0])).size == 2

    def test_induced_matching_of_p6(self):
        g = path_graph(6)
        res = solve_sigma(g, path_sequence(6), SigmaSpec([1]))
        assert res.size == 4
        assert is_sigma_set(g, SigmaSpec([1]), res.vertices)

    def test_pd_grid_independence_number(self):
        # 16, confirmed independently with networkx on the complement
        g, seq = pohoata_davies(4, 1)
        assert g.n == 32
        assert solve_sigma(g, seq, SigmaSpec([0])).size == 16

    def test_triangle_in_k4(self):
        res = solve_sigma(complete(4), star_sequence(complete(4)), SigmaSpec([0, 1, 2]))
        assert res.size == 3

    @pytest.mark.parametrize("n", [1, 3, 6])
    def test_independent_set_of_clique(self, n):
        assert solve_sigma(complete(n), star_sequence(complete(n)), SigmaSpec([0])).size == 1

    def test_no_zero_allows_empty_answer(self):
        res = solve_sigma(Graph(3), star_sequence(Graph(3)), SigmaSpec([1]))
        assert res.size == 0 and res.vertices == ()

    def test_clique_column_matches_oracle(self):
        g, seq = clique_column_grid(3, 4)
        for sig in SIGMAS[:4]:
            assert solve_sigma(g, seq, SigmaSpec(sig)).size == oracle_sigma(g, sig)[0]


class TestAgainstOracle:
    @given(graphs_with_sequences(max_n=7), st.sampled_from(SIGMAS))
    def test_size_equals_oracle(self, gs, sig):
        g, seq = gs
        if max(sig) > g.n:
            return
        spec = SigmaSpec(sig)
        res = solve_sigma(g, seq, spec)
        assert res.size == oracle_sigma(g, sig)[0]
        assert is_sigma_set(g, spec, res.vertices)
        assert len(res.vertices) == res.size

    @given(graphs_with_sequences(max_n=6), st.sampled_from(SIGMAS[:4]))
    def test_table_entries_are_valid(self, gs, sig):
        g, seq = gs
        if max(sig) <= g.n:
            solve_sigma(g, seq, SigmaSpec(sig), check_keys=True)

    @given(graphs_with_sequences(max_n=7), st.sampled_from(SIGMAS))
    def test_certificate_replays_to_answer(self, gs, sig):
        g, seq = gs
        if max(sig) > g.n:
            return
        res = solve_sigma(g, seq, SigmaSpec(sig))
        assert replay_certificate(res.certificate, SequenceLevels(g, seq)) == frozenset(res.vertices)

    @given(graphs_with_sequences(max_n=7), st.sampled_from(SIGMAS))
    def test_counting_bounds(self, gs, sig):
        g, seq = gs
        if max(sig) > g.n:
            return
        res = solve_sigma(g, seq, SigmaSpec(sig))
        st_ = res.stats.as_dict()
        t = verify_witness(g, seq).witnessed
        assert st_["t"] == t
        assert st_["max_subgraphs_per_level"] <= g.n**t
        assert st_["max_separators"] <= 4 * g.n ** (4 * max(sig))
        assert st_["max_components"] <= t + 2


def separator_contexts(g, seq):
    """One (level, P1, P2, Q1, Q2) per merge, Q_j the black neighbours of P_j only."""
    levels = SequenceLevels(g, seq)
    for i in range(1, g.n):
        a, b, _ = levels.merge_at(i)
        lev1 = levels[i + 1]
        rest = set(lev1.parts) - {a, b}
        yield lev1, a, b, (lev1.black[a] - lev1.black[b]) & rest, (lev1.black[b] - lev1.black[a]) & rest


class TestSeparatorEnumeration:
    @given(graphs_with_sequences(min_n=2, max_n=6), st.integers(0, 2))
    def test_separator_conditions(self, gs, alpha):
        g, seq = gs
        for lev, a, b, q1, q2 in separator_contexts(g, seq):
            seps = list(enumerate_sigma_separators(g, lev.parts, lev.black, a, b, q1, q2, alpha))
            assert len(seps) <= 4 * g.n ** (4 * alpha)
            assert len(set(seps)) == len(seps)
            universe = {a, b, *q1, *q2}
            for sep in seps:
                assert sep.O <= universe
                covered = set().union(*(lev.parts[x] for x in sep.O)) if sep.O else set()
                assert sep.U <= covered
                assert all(len(sep.U & lev.parts[x]) <= alpha for x in sep.O)
                assert all(len(g.adj[v] & sep.U) <= alpha for v in sep.U)
                for x in universe - sep.O:
                    for y in lev.black[x] & universe:
                        assert y in sep.O and not (sep.U & lev.parts[y])
                if alpha == 0:
                    assert not sep.U

    @given(graphs_with_sequences(min_n=2, max_n=6))
    def test_empty_separator_present_without_black_neighbours(self, gs):
        g, seq = gs
        for lev, a, b, q1, q2 in separator_contexts(g, seq):
            if not q1 and not q2 and b not in lev.black[a]:
                seps = set(enumerate_sigma_separators(g, lev.parts, lev.black, a, b, q1, q2, 1))
                assert any(not s.O and not s.U for s in seps)
