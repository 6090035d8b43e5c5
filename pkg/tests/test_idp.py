import pytest
from hypothesis import given
from hypothesis import strategies as st

from cmlkit.contraction import ContractionSequence, SequenceLevels, star_sequence, verify_witness
from cmlkit.errors import InvalidInstance
from cmlkit.generators import cycle_graph, path_graph, path_sequence, pohoata_davies
from cmlkit.graph import Graph
from cmlkit.idp import IdpInstance, IdpSolver, enumerate_idp_separators, merge_pairings, paths_solve_instance, solve_idp
from cmlkit.oracles import mutually_induced, oracle_idp

from helpers import graphs_with_sequences


@st.composite
def idp_cases(draw, min_n=2, max_n=7, max_pairs=2):
    g, seq = draw(graphs_with_sequences(min_n, max_n))
    ell = draw(st.integers(1, min(max_pairs, g.n // 2)))
    ts = draw(st.permutations(range(g.n)))[: 2 * ell]
    return IdpInstance(g, [(ts[2 * k], ts[2 * k + 1]) for k in range(ell)]), seq


class TestInstance:
    @pytest.mark.parametrize("pairs", [[(0, 5)], [(1, 1)], [(0, 1), (1, 2)], [(0, 1), (2, 0)]])
    def test_rejected(self, pairs):
        with pytest.raises(InvalidInstance):
            IdpInstance(path_graph(4), pairs)

    def test_terminals(self):
        assert IdpInstance(path_graph(4), [(0, 3)]).terminals == {0, 3}

    def test_path_check_orientation(self):
        inst = IdpInstance(path_graph(3), [(2, 0)])
        assert paths_solve_instance(inst, [(0, 1, 2)])
        assert not paths_solve_instance(inst, [(0, 1)])
        assert not paths_solve_instance(inst, None)


class TestKnownInstances:
    def test_whole_path(self):
        res = solve_idp(IdpInstance(path_graph(5), [(0, 4)]), path_sequence(5))
        assert res.feasible and res.paths == ((0, 1, 2, 3, 4),)

    def test_c6_two_edges(self):
        g = cycle_graph(6)
        res = solve_idp(IdpInstance(g, [(0, 1), (3, 4)]), path_sequence(6))
        assert res.feasible
        assert res.paths == ((0, 1), (3, 4))
        assert mutually_induced(g, res.paths)

    def test_c6_antipodal_pairs(self):
        res = solve_idp(IdpInstance(cycle_graph(6), [(0, 3), (1, 4)]), path_sequence(6))
        assert not res.feasible and res.paths is None

    def test_terminals_in_different_components(self):
        g = Graph(4, [(0, 1), (2, 3)])
        assert not solve_idp(IdpInstance(g, [(0, 2)]), star_sequence(g)).feasible

    def test_pd_grid_far_pairs(self):
        g, seq = pohoata_davies(3, 1)  # 18 vertices
        pairs = [(0, 14), (4, 10)]
        res = solve_idp(IdpInstance(g, pairs), seq)
        assert res.feasible == (oracle_idp(g, pairs, cap=18) is not None)
        if res.feasible:
            assert mutually_induced(g, res.paths)


class TestMergePairings:
    def test_two_edges_make_a_path(self):
        r = merge_pairings([[("a", "b")], [("b", "c")]])
        assert r.ok and r.endpairs == (("a", "c"),)
        assert r.walks == (("a", "b", "c"),)

    def test_double_edge_is_a_cycle(self):
        r = merge_pairings([[("a", "b")], [("a", "b")]])
        assert not r.ok

    def test_long_chain(self):
        r = merge_pairings([[(1, 2), (3, 4)], [(2, 3)], [(4, 5)]])
        assert r.ok and r.endpairs == ((1, 5),)

    def test_degree_three(self):
        assert not merge_pairings([[(0, 1), (0, 2), (0, 3)]]).ok

    def test_isolated_vertex(self):
        assert not merge_pairings([[(0, 1)], [(2,)]]).ok

    def test_two_paths(self):
        r = merge_pairings([[(0, 1), (5, 6)], [(1, 2)]])
        assert r.ok and set(r.endpairs) == {(0, 2), (5, 6)}


def idp_contexts(g, seq):
    levels = SequenceLevels(g, seq)
    for i in range(1, g.n):
        a, b, _ = levels.merge_at(i)
        lev1 = levels[i + 1]
        rest = set(lev1.parts) - {a, b}
        yield lev1, a, b, (lev1.black[a] - lev1.black[b]) & rest, (lev1.black[b] - lev1.black[a]) & rest


def is_linear_forest(g, vs):
    import networkx as nx

    G = nx.Graph()
    G.add_nodes_from(vs)
    G.add_edges_from((u, v) for u, v in g.edges if u in vs and v in vs)
    return not vs or (nx.is_forest(G) and all(d <= 2 for _, d in G.degree()))


class TestSeparatorEnumeration:
    @given(graphs_with_sequences(min_n=2, max_n=6))
    def test_separator_conditions(self, gs):
        g, seq = gs
        for lev, a, b, q1, q2 in idp_contexts(g, seq):
            seps = list(enumerate_idp_separators(g, lev.parts, lev.black, a, b, q1, q2))
            assert len(seps) <= 4 * g.n**6
            assert len({(s.O, s.U) for s in seps}) == len(seps)
            universe = {a, b, *q1, *q2}
            for sep in seps:
                assert sep.O <= universe
                assert all(len(sep.U & lev.parts[x]) <= 2 for x in sep.O)
                assert all(v in lev.parts[lev.part_of[v]] and lev.part_of[v] in sep.O for v in sep.U)
                assert is_linear_forest(g, sep.U)
                assert sorted(v for p in sep.paths for v in p) == sorted(sep.U)
                for x in universe - sep.O:
                    for y in lev.black[x] & universe:
                        assert y in sep.O and not (sep.U & lev.parts[y])

    @given(graphs_with_sequences(min_n=2, max_n=6))
    def test_empty_separator_present(self, gs):
        g, seq = gs
        for lev, a, b, q1, q2 in idp_contexts(g, seq):
            if not q1 and not q2 and b not in lev.black[a]:
                seps = enumerate_idp_separators(g, lev.parts, lev.black, a, b, q1, q2)
                assert any(not s.O and not s.U for s in seps)

    def test_hand_instance_with_crossing_edge(self):
        # two columns {0,1} and {2,3}; the rows 0-2 and 1-3 are edges
        g = Graph(4, [(0, 1), (2, 3), (0, 2), (1, 3)])
        parts = {0: frozenset({0, 1}), 2: frozenset({2, 3})}
        black = {0: frozenset(), 2: frozenset()}
        seps = list(enumerate_idp_separators(g, parts, black, 0, 2, (), ()))
        chosen = [s for s in seps if s.U == {0, 2}]
        assert chosen and chosen[0].paths == ((0, 2),)
        assert all(len(p) >= 1 for s in seps for p in s.paths)
        assert not any(s.U == {0, 1, 2, 3} for s in seps)  # a 4-cycle is not a linear forest


class TestAgainstOracle:
    @given(idp_cases())
    def test_verdict_equals_oracle(self, case):
        inst, seq = case
        res = solve_idp(inst, seq)
        assert res.feasible == (oracle_idp(inst.graph, inst.pairs) is not None)
        if res.feasible:
            assert paths_solve_instance(inst, res.paths)

    @given(idp_cases(max_n=6))
    def test_table_entries_are_valid(self, case):
        inst, seq = case
        solve_idp(inst, seq, check_keys=True)

    @given(idp_cases())
    def test_certificate_replays(self, case):
        inst, seq = case
        solver = IdpSolver(inst, seq)
        res = solver.solve()
        if res.feasible:
            rebuilt = solver.replay(res.certificate)
            assert len(rebuilt) == len(res.paths)
            for p in res.paths:
                q = rebuilt[tuple(sorted((p[0], p[-1])))]
                assert q in (p, p[::-1])

    @given(idp_cases())
    def test_counting_bounds(self, case):
        inst, seq = case
        st_ = solve_idp(inst, seq).stats.as_dict()
        n, t = inst.graph.n, verify_witness(inst.graph, seq).witnessed
        assert st_["max_subgraphs_per_level"] <= n**t
        assert st_["max_separators"] <= 4 * n**6
        assert st_["max_components"] <= t + 2


@pytest.mark.parametrize("n", [4, 7, 10])
def test_paths_and_cycles_match_oracle(n):
    for g in (path_graph(n), cycle_graph(n)):
        for pairs in ([(0, n - 1)], [(0, 1), (n // 2, n // 2 + 1)]):
            res = solve_idp(IdpInstance(g, pairs), path_sequence(n))
            assert res.feasible == (oracle_idp(g, pairs) is not None)


def test_sequence_length_mismatch():
    with pytest.raises(Exception):
        solve_idp(IdpInstance(path_graph(3), [(0, 2)]), ContractionSequence(4, [(0, 1), (0, 2), (0, 3)]))
