from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cmlkit.contraction import OrderedGraph
from cmlkit.errors import ParseError
from cmlkit.fileio import (
    format_cseq,
    format_dimacs,
    format_order,
    format_pairs,
    format_partition,
    load_graph,
    parse_cseq,
    parse_dimacs,
    parse_order,
    parse_pairs,
    parse_partition,
    parse_weights,
    read_text,
)
from cmlkit.generators import path_graph
from cmlkit.graph import Graph, Partition

from helpers import graphs, partitions, sequences

SAMPLE = """c a path
c
p edge 3 2
e 1 2
e 2 3
"""


class TestDimacs:
    def test_sample_round_trip(self):
        f = parse_dimacs(SAMPLE)
        assert f.graph == path_graph(3)
        assert f.comments == ["a path", ""]
        assert format_dimacs(f.graph, f.comments) == SAMPLE

    def test_weights(self):
        text = "p edge 2 1\nn 1 3/4\nn 2 2/1\ne 1 2\n"
        g = parse_dimacs(text).graph
        assert g.weights == (Fraction(3, 4), Fraction(2))
        assert format_dimacs(g) == text

    def test_unlisted_weight_defaults_to_one(self):
        g = parse_dimacs("p edge 2 0\nn 2 5\n").graph
        assert g.weights == (1, 5)

    def test_edges_sorted_on_write(self):
        g = parse_dimacs("p edge 3 2\ne 3 2\ne 2 1\n").graph
        assert format_dimacs(g).splitlines()[1:] == ["e 1 2", "e 2 3"]

    @pytest.mark.parametrize(
        "text",
        [
            "e 1 2\n",
            "p edge 2 1\n",
            "p edge 2 1\ne 1 3\n",
            "p edge 2 1\ne 1 1\n",
            "p edge 2 2\ne 1 2\ne 2 1\n",
            "p edge 2 0\nn 1 0\n",
            "p edge 2 0\nn 1 x\n",
            "p edge 2 0\nx 1 2\n",
            "p col 2 0\n",
            "p edge 2 0\np edge 2 0\n",
            "p edge two 0\n",
        ],
    )
    def test_malformed(self, text):
        with pytest.raises(ParseError):
            parse_dimacs(text)

    @given(graphs(max_n=8), st.booleans(), st.data())
    def test_round_trip_is_byte_identical(self, g, weighted, data):
        if weighted:
            ws = data.draw(st.lists(st.fractions(min_value=Fraction(1, 7), max_value=9), min_size=g.n, max_size=g.n))
            g = g.with_weights(ws)
        text = format_dimacs(g, ["generated"])
        again = parse_dimacs(text)
        assert again.graph == g and again.graph.weights == g.weights
        assert format_dimacs(again.graph, again.comments) == text


class TestCseq:
    def test_sample(self):
        f = parse_cseq("# star\ncseq 1 3\n0 1\n0 2\n")
        assert f.seq.merges == ((0, 1), (0, 2)) and f.comments == ["star"]

    @pytest.mark.parametrize("text", ["0 1\n", "cseq 2 3\n", "cseq 1 0\n", "cseq 1 3\n0\n", "cseq 1 3\na b\n"])
    def test_malformed(self, text):
        with pytest.raises(ParseError):
            parse_cseq(text)

    @given(st.integers(1, 9).flatmap(sequences))
    def test_round_trip(self, seq):
        text = format_cseq(seq, ["note"])
        f = parse_cseq(text)
        assert f.seq == seq
        assert format_cseq(f.seq, f.comments) == text


class TestSmallFormats:
    def test_pairs(self):
        text = "# pairs\n1 4\n2 3  # second\n"
        assert parse_pairs(text, 4) == [(0, 3), (1, 2)]
        assert format_pairs([(0, 3), (1, 2)]) == "1 4\n2 3\n"

    def test_pairs_out_of_range(self):
        with pytest.raises(ParseError):
            parse_pairs("1 5\n", 4)

    @given(graphs(max_n=8), st.data())
    def test_order_round_trip(self, g, data):
        og = OrderedGraph(g, tuple(data.draw(st.permutations(range(1, g.n + 1)))))
        text = format_order(og)
        assert parse_order(text, g) == og
        assert format_order(parse_order(text, g)) == text

    def test_order_not_permutation(self):
        with pytest.raises(ParseError):
            parse_order("1\n1\n3\n", path_graph(3))

    @given(st.integers(1, 9).flatmap(lambda n: st.tuples(st.just(n), partitions(n))))
    def test_partition_round_trip(self, case):
        n, parts = case
        p = Partition.from_parts(n, parts)
        text = format_partition(p)
        assert parse_partition(text, n) == p
        assert format_partition(parse_partition(text, n)) == text

    def test_partition_must_cover(self):
        with pytest.raises(ParseError):
            parse_partition("1 2\n", 3)

    def test_weights(self):
        assert parse_weights("2 1/3\n", 3) == [1, Fraction(1, 3), 1]
        with pytest.raises(ParseError):
            parse_weights("2 -1\n", 3)


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        read_text(tmp_path / "nope.gr")


def test_load_graph(tmp_path):
    path = tmp_path / "g.gr"
    path.write_text(SAMPLE)
    assert load_graph(path) == Graph(3, [(0, 1), (1, 2)])
