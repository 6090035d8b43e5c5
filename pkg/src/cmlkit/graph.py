"""Graphs, trigraphs, partitions and the max-leaf machinery.

Vertices of a :class:`Graph` are the integers ``0..n-1``.  A :class:`Trigraph`
lives on an arbitrary sorted tuple of integer labels (quotients use part
labels, i.e. the minimum vertex of each part).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import (
    DisconnectedInput,
    EmptyGraph,
    EnumerationCapExceeded,
    InvalidPartition,
)

DEFAULT_CAP = 10**7


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple undirected graph with optional rational vertex weights."""

    __slots__ = ("n", "edges", "adj", "weights")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        weights: Mapping[int, Fraction] | Iterable[Fraction] | None = None,
    ):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        es = set()
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            p = _pair(u, v)
            if p in es:
                raise ValueError(f"duplicate edge {p}")
            es.add(p)
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.edges = frozenset(es)
        self.adj = tuple(frozenset(a) for a in adj)
        if weights is None:
            self.weights = None
        else:
            if isinstance(weights, Mapping):
                ws = [weights[v] for v in range(n)]
            else:
                ws = list(weights)
            if len(ws) != n:
                raise ValueError("weights must be defined for every vertex")
            ws = [Fraction(w) for w in ws]
            if any(w <= 0 for w in ws):
                raise ValueError("weights must be strictly positive")
            self.weights = tuple(ws)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
            and self.weights == other.weights
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def weight(self, v: int) -> Fraction:
        return Fraction(1) if self.weights is None else self.weights[v]

    def total_weight(self, vs: Iterable[int] | None = None) -> Fraction:
        if vs is None:
            vs = range(self.n)
        return sum((self.weight(v) for v in vs), Fraction(0))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def with_weights(self, weights) -> "Graph":
        return Graph(self.n, self.edges, weights)

    def induced(self, vs: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph, relabelled to ``0..k-1``; returns (graph, old ids)."""
        old = sorted(set(vs))
        idx = {v: i for i, v in enumerate(old)}
        es = [(idx[u], idx[v]) for u, v in self.edges if u in idx and v in idx]
        ws = None if self.weights is None else [self.weights[v] for v in old]
        return Graph(len(old), es, ws), old

    def complement(self) -> "Graph":
        es = [(u, v) for u in range(self.n) for v in range(u + 1, self.n) if v not in self.adj[u]]
        return Graph(self.n, es, self.weights)


class Trigraph:
    """Trigraph on sorted integer labels with disjoint black and red edge sets."""

    __slots__ = ("vertices", "black", "red", "_bl", "_rd")

    def __init__(self, vertices: Iterable[int], black=(), red=()):
        self.vertices = tuple(sorted(set(vertices)))
        vset = set(self.vertices)
        self.black = frozenset(_pair(u, v) for u, v in black)
        self.red = frozenset(_pair(u, v) for u, v in red)
        for u, v in self.black | self.red:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if u not in vset or v not in vset:
                raise ValueError(f"edge ({u},{v}) references unknown vertex")
        if self.black & self.red:
            raise ValueError("black and red edge sets must be disjoint")
        bl: dict[int, set[int]] = {v: set() for v in self.vertices}
        rd: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.black:
            bl[u].add(v)
            bl[v].add(u)
        for u, v in self.red:
            rd[u].add(v)
            rd[v].add(u)
        self._bl = {v: frozenset(s) for v, s in bl.items()}
        self._rd = {v: frozenset(s) for v, s in rd.items()}

    @property
    def n(self) -> int:
        return len(self.vertices)

    def black_neighbors(self, v: int) -> frozenset[int]:
        return self._bl[v]

    def red_neighbors(self, v: int) -> frozenset[int]:
        return self._rd[v]

    def red_max_degree(self) -> int:
        return max((len(s) for s in self._rd.values()), default=0)

    def __repr__(self) -> str:
        return f"Trigraph(n={self.n}, black={len(self.black)}, red={len(self.red)})"


@dataclass(frozen=True)
class Partition:
    """Partition of ``0..n-1`` into non-empty parts labelled by their minimum."""

    n: int
    parts: tuple[frozenset[int], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for p in self.parts:
            if not p:
                raise InvalidPartition("empty part")
            if seen & p:
                raise InvalidPartition("parts overlap")
            seen |= p
        if seen != set(range(self.n)):
            raise InvalidPartition("parts do not cover the vertex set")

    @classmethod
    def from_parts(cls, n: int, parts: Iterable[Iterable[int]]) -> "Partition":
        ps = sorted((frozenset(p) for p in parts), key=min)
        return cls(n, tuple(ps))

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(n, tuple(frozenset((v,)) for v in range(n)))

    @property
    def labels(self) -> list[int]:
        return [min(p) for p in self.parts]

    def part_of(self) -> dict[int, int]:
        """Map vertex -> label of its part."""
        out = {}
        for p in self.parts:
            lab = min(p)
            for v in p:
                out[v] = lab
        return out

    def by_label(self) -> dict[int, frozenset[int]]:
        return {min(p): p for p in self.parts}

    def __len__(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class ConnSubgraphHandle:
    """A connected set of trigraph vertices with its cached open neighbourhood."""

    parts: tuple[int, ...]
    neighborhood: frozenset[int] = field(compare=False)

    def __len__(self) -> int:
        return len(self.parts)


def red_graph(t: Trigraph) -> Graph:
    """Red edges of ``t`` as a Graph; vertex i is ``t.vertices[i]``."""
    idx = {v: i for i, v in enumerate(t.vertices)}
    return Graph(t.n, [(idx[u], idx[v]) for u, v in t.red])


def neighborhood_of_set(g: Graph, s: Iterable[int]) -> frozenset[int]:
    s = set(s)
    for v in s:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    out: set[int] = set()
    for v in s:
        out |= g.adj[v]
    return frozenset(out - s)


def connected_components(g: Graph, vs: Iterable[int] | None = None) -> list[list[int]]:
    """Components of ``g`` (or of ``g[vs]``), each sorted, ordered by minimum."""
    allowed = set(range(g.n)) if vs is None else set(vs)
    seen: set[int] = set()
    comps = []
    for s in sorted(allowed):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        dq = deque([s])
        while dq:
            u = dq.popleft()
            for w in g.adj[u]:
                if w in allowed and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    dq.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(connected_components(g)) == 1


def _iter_connected_sets(adj, order: Iterable[int], cap: int | None, prune=None):
    """Each connected vertex set exactly once (ESU-style extension).

    ``adj`` maps vertex -> neighbour set.  ``prune(S, N)`` returning True stops
    extension below S (S itself is still yielded).
    """
    count = 0
    for root in order:
        stack = [(frozenset((root,)), frozenset(w for w in adj[root] if w > root), adj[root] | {root})]
        while stack:
            s, ext, closed = stack.pop()
            count += 1
            if cap is not None and count > cap:
                raise EnumerationCapExceeded(f"more than {cap} connected subsets")
            yield s
            if prune is not None and prune(s):
                continue
            rest = sorted(ext, reverse=True)
            # children: pick w, remaining candidates are those smaller in pop order
            while rest:
                w = rest.pop()
                new_ext = set(rest)
                new_ext.update(u for u in adj[w] if u > root and u not in closed)
                stack.append((s | {w}, frozenset(new_ext), closed | adj[w]))


def enumerate_connected_red_subgraphs(t: Trigraph, cap: int = DEFAULT_CAP) -> Iterator[ConnSubgraphHandle]:
    """Every non-empty connected induced subgraph of the red graph of ``t``.

    Handles come out sorted lexicographically by their part-id tuples.
    """
    if cap <= 0:
        raise ValueError("cap must be positive")
    adj = {v: t.red_neighbors(v) for v in t.vertices}
    sets = sorted(tuple(sorted(s)) for s in _iter_connected_sets(adj, t.vertices, cap))
    for parts in sets:
        nb: set[int] = set()
        for p in parts:
            nb |= t.red_neighbors(p) | t.black_neighbors(p)
        yield ConnSubgraphHandle(parts, frozenset(nb.difference(parts)))


def count_connected_sets(adj, cap: int = DEFAULT_CAP) -> int:
    return sum(1 for _ in _iter_connected_sets(adj, sorted(adj), cap))


def _max_leaf_connected(adj: Mapping[int, frozenset[int]], cap: int) -> int:
    verts = sorted(adj)
    n = len(verts)
    if n == 1:
        return 1
    m = sum(len(a) for a in adj.values()) // 2
    degs = [len(adj[v]) for v in verts]
    if m == n - 1:
        # a tree is its own unique spanning tree
        return sum(1 for d in degs if d == 1)
    if max(degs) <= 2:
        return 2
    best = max(2, max(degs))

    def nbh_size(s):
        out = set()
        for v in s:
            out |= adj[v]
        return len(out - s)

    def prune(s):
        nonlocal best
        if len(s) < n:
            k = nbh_size(s)
            if k > best:
                best = k
        return n - len(s) - 1 <= best

    for _ in _iter_connected_sets(adj, verts, cap, prune):
        pass
    return best


def max_leaf(g: Graph, cap: int = DEFAULT_CAP) -> int:
    """Maximum number of leaves over spanning trees of a connected graph."""
    if g.n == 0:
        raise EmptyGraph("max_leaf of the empty graph")
    if not is_connected(g):
        raise DisconnectedInput("max_leaf needs a connected graph")
    return _max_leaf_connected({v: g.adj[v] for v in range(g.n)}, cap)


def component_max_leaf(g: Graph, cap: int = DEFAULT_CAP) -> int:
    """Largest max-leaf over connected components (1 for an edgeless graph)."""
    if g.n == 0:
        raise EmptyGraph("component_max_leaf of the empty graph")
    best = 1
    for comp in connected_components(g):
        if len(comp) > 1:
            sub = {v: g.adj[v] for v in comp}
            best = max(best, _max_leaf_connected(sub, cap))
    return best


def cml_of_adjacency(adj: Mapping[int, Iterable[int]], cap: int = DEFAULT_CAP, cache: dict | None = None) -> int:
    """Component max-leaf for a graph given as a label -> neighbours mapping.

    Isolated labels may be omitted.  ``cache`` memoises per-component values
    keyed by the component's edge set.
    """
    adj = {v: frozenset(a) for v, a in adj.items() if a}
    best = 1
    seen: set[int] = set()
    for s in sorted(adj):
        if s in seen:
            continue
        comp = {s}
        dq = deque([s])
        while dq:
            u = dq.popleft()
            for w in adj[u]:
                if w not in comp:
                    comp.add(w)
                    dq.append(w)
        seen |= comp
        sub = {v: adj[v] for v in comp}
        if cache is not None:
            key = frozenset(_pair(u, w) for u in comp for w in adj[u])
            val = cache.get(key)
            if val is None:
                val = _max_leaf_connected(sub, cap)
                cache[key] = val
        else:
            val = _max_leaf_connected(sub, cap)
        best = max(best, val)
    return best
