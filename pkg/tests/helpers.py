"""Hypothesis strategies shared by the property tests."""

from itertools import combinations

from hypothesis import strategies as st

from cmlkit.contraction import ContractionSequence
from cmlkit.graph import Graph, is_connected


@st.composite
def graphs(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [p for p, k in zip(pairs, keep) if k])


def connected_graphs(min_n=1, max_n=7):
    return graphs(min_n, max_n).filter(is_connected)


@st.composite
def sequences(draw, n):
    """A random valid contraction sequence on ``n`` vertices."""
    live = list(range(n))
    merges = []
    while len(live) > 1:
        a, b = draw(st.lists(st.sampled_from(live), min_size=2, max_size=2, unique=True))
        merges.append((a, b))
        live.remove(max(a, b))
    return ContractionSequence(n, merges)


@st.composite
def graphs_with_sequences(draw, min_n=1, max_n=7):
    g = draw(graphs(min_n, max_n))
    return g, draw(sequences(g.n))


@st.composite
def partitions(draw, n):
    labels = draw(st.lists(st.integers(0, max(0, n - 1)), min_size=n, max_size=n))
    groups = {}
    for v, lab in enumerate(labels):
        groups.setdefault(lab, []).append(v)
    return list(groups.values())
