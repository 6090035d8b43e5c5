"""Contraction sequences, quotient trigraphs, witness verification and stretch.

A sequence on ``n`` vertices is a list of ``n-1`` merges ``(a, b)`` of live part
labels; the merged part is labelled ``min(a, b)``.  Partitions are indexed by
their number of parts: ``P_n`` is the singleton partition and ``P_1`` has one
part.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import BadMerge, InvalidPartition, InvalidWitness
from .graph import DEFAULT_CAP, Graph, Partition, Trigraph, cml_of_adjacency


@dataclass(frozen=True)
class ContractionSequence:
    n: int
    merges: tuple[tuple[int, int], ...]

    def __init__(self, n: int, merges: Sequence[tuple[int, int]]):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "merges", tuple((int(a), int(b)) for a, b in merges))

    def check(self) -> None:
        """Raise BadMerge on the first merge that does not replay."""
        if self.n < 1:
            raise InvalidWitness("sequence on zero vertices")
        if len(self.merges) != self.n - 1:
            raise BadMerge(len(self.merges) + 1, -1, f"expected {self.n - 1} merges, got {len(self.merges)}")
        live = set(range(self.n))
        for step, (a, b) in enumerate(self.merges, 1):
            for lab in (a, b):
                if lab not in live:
                    raise BadMerge(step, lab, "label is not a live part")
            if a == b:
                raise BadMerge(step, a, "part merged with itself")
            live.discard(max(a, b))


@dataclass(frozen=True)
class OrderedGraph:
    graph: Graph
    order: tuple[int, ...]  # order[v] is the position of v, in 1..n

    def __post_init__(self):
        if sorted(self.order) != list(range(1, self.graph.n + 1)):
            raise ValueError("order must be a bijection onto 1..n")


@dataclass(frozen=True)
class WitnessReport:
    """Per-step red-graph statistics; entry ``k`` describes ``P_{k+1}``."""

    per_step: tuple[int, ...]
    red_max_degree: tuple[int, ...]
    red_edges: tuple[int, ...]

    @property
    def witnessed(self) -> int:
        return max(self.per_step)

    def value_at(self, i: int) -> int:
        """cml of the red graph of ``G/P_i``."""
        return self.per_step[i - 1]


def replay(seq: ContractionSequence) -> Iterator[Partition]:
    """Yield ``P_n`` (singletons) through ``P_1``."""
    seq.check()
    parts = {v: frozenset((v,)) for v in range(seq.n)}
    yield Partition(seq.n, tuple(parts[v] for v in sorted(parts)))
    for a, b in seq.merges:
        lo, hi = min(a, b), max(a, b)
        parts[lo] = parts[lo] | parts.pop(hi)
        yield Partition(seq.n, tuple(parts[v] for v in sorted(parts)))


def quotient(g: Graph, p: Partition) -> Trigraph:
    """The trigraph ``g/p`` on part labels."""
    if p.n != g.n:
        raise InvalidPartition("partition and graph disagree on the vertex count")
    part_of = p.part_of()
    size = {min(q): len(q) for q in p.parts}
    cnt: dict[tuple[int, int], int] = {}
    for u, v in g.edges:
        a, b = part_of[u], part_of[v]
        if a != b:
            key = (a, b) if a < b else (b, a)
            cnt[key] = cnt.get(key, 0) + 1
    black, red = [], []
    for (a, b), c in cnt.items():
        (black if c == size[a] * size[b] else red).append((a, b))
    return Trigraph(size.keys(), black, red)


class QuotientTracker:
    """Quotient trigraph maintained across merges.

    Only the pairs incident to the merged part are re-classified on each merge,
    using cross-edge counts between parts.
    """

    def __init__(self, g: Graph):
        self.g = g
        self.size = {v: 1 for v in range(g.n)}
        self.members = {v: [v] for v in range(g.n)}
        self.cnt: dict[int, dict[int, int]] = {v: {w: 1 for w in g.adj[v]} for v in range(g.n)}
        self.red: dict[int, set[int]] = {v: set() for v in range(g.n)}

    def is_black(self, a: int, b: int) -> bool:
        return self.cnt[a].get(b, 0) == self.size[a] * self.size[b]

    def merge(self, a: int, b: int) -> int:
        lo, hi = min(a, b), max(a, b)
        c_lo, c_hi = self.cnt[lo], self.cnt.pop(hi)
        c_lo.pop(hi, None)
        c_hi.pop(lo, None)
        for w, c in c_hi.items():
            c_lo[w] = c_lo.get(w, 0) + c
            cw = self.cnt[w]
            cw[lo] = cw.get(lo, 0) + cw.pop(hi)
        self.size[lo] += self.size.pop(hi)
        self.members[lo].extend(self.members.pop(hi))
        for w in self.red.pop(hi):
            self.red[w].discard(hi)
        self.red[lo].discard(hi)
        for w in list(self.red[lo]):
            self.red[w].discard(lo)
        self.red[lo] = set()
        zs = self.size[lo]
        for w, c in c_lo.items():
            if c != zs * self.size[w]:
                self.red[lo].add(w)
                self.red[w].add(lo)
        return lo

    def trigraph(self) -> Trigraph:
        black, red = [], []
        for a, row in self.cnt.items():
            for b in row:
                if a < b:
                    (red if b in self.red[a] else black).append((a, b))
        return Trigraph(self.size.keys(), black, red)

    def red_adjacency(self) -> dict[int, set[int]]:
        return {v: s for v, s in self.red.items() if s}


def verify_witness(
    g: Graph, seq: ContractionSequence, cap: int = DEFAULT_CAP, edge_counts: bool = True
) -> WitnessReport:
    """Replay ``seq`` on ``g`` and report the red-graph cml at every step."""
    if g.n == 0:
        from .errors import EmptyGraph

        raise EmptyGraph("verify_witness on the empty graph")
    if seq.n != g.n:
        raise InvalidWitness(f"sequence is on {seq.n} vertices, graph has {g.n}")
    seq.check()
    tr = QuotientTracker(g)
    cache: dict = {}
    values, degs, reds = [1], [0], [0]
    for a, b in seq.merges:
        tr.merge(a, b)
        radj = tr.red_adjacency()
        values.append(cml_of_adjacency(radj, cap, cache))
        degs.append(max((len(s) for s in radj.values()), default=0))
        reds.append(sum(len(s) for s in radj.values()) // 2 if edge_counts else 0)
    # collected from P_n down to P_1; store with P_1 first
    return WitnessReport(tuple(reversed(values)), tuple(reversed(degs)), tuple(reversed(reds)))


def star_sequence(g: Graph) -> ContractionSequence:
    """Merge vertex 0's part with 1, 2, ..., n-1 in turn."""
    if g.n < 1:
        raise ValueError("star_sequence needs n >= 1")
    return ContractionSequence(g.n, [(0, v) for v in range(1, g.n)])


def stretch(og: OrderedGraph, p: Partition) -> int:
    """Max over parts X of the number of other parts whose span meets that of R[X]."""
    t = quotient(og.graph, p)
    parts = p.by_label()
    lo = {lab: min(og.order[v] for v in q) for lab, q in parts.items()}
    hi = {lab: max(og.order[v] for v in q) for lab, q in parts.items()}
    best = 0
    for x in parts:
        closed = [x, *t.red_neighbors(x)]
        a = min(lo[y] for y in closed)
        b = max(hi[y] for y in closed)
        c = sum(1 for y in parts if y != x and lo[y] <= b and hi[y] >= a)
        best = max(best, c)
    return best


class LevelData:
    """One partition ``P_i`` of a sequence, with its quotient adjacency."""

    __slots__ = ("i", "parts", "part_of", "red", "black")

    def __init__(self, i, parts, part_of, red, black):
        self.i = i
        self.parts: dict[int, frozenset[int]] = parts
        self.part_of: tuple[int, ...] = part_of
        self.red: dict[int, frozenset[int]] = red
        self.black: dict[int, frozenset[int]] = black


class SequenceLevels:
    """All partitions of a sequence with quotient data, indexed by part count.

    ``merge_at(i)`` gives ``(p1, p2, pstar)``: the labels of the two parts of
    ``P_{i+1}`` merged into the part labelled ``pstar`` of ``P_i``.
    """

    def __init__(self, g: Graph, seq: ContractionSequence):
        if seq.n != g.n:
            raise InvalidWitness(f"sequence is on {seq.n} vertices, graph has {g.n}")
        seq.check()
        self.g = g
        self.n = g.n
        self.levels: dict[int, LevelData] = {}
        self._merge: dict[int, tuple[int, int, int]] = {}
        tr = QuotientTracker(g)
        self._snapshot(tr, g.n)
        for s, (a, b) in enumerate(seq.merges):
            i = g.n - 1 - s
            self._merge[i] = (a, b, min(a, b))
            tr.merge(a, b)
            self._snapshot(tr, i)

    def _snapshot(self, tr: QuotientTracker, i: int) -> None:
        parts = {lab: frozenset(ms) for lab, ms in tr.members.items()}
        part_of = [0] * self.n
        for lab, ms in parts.items():
            for v in ms:
                part_of[v] = lab
        red = {lab: frozenset(tr.red[lab]) for lab in parts}
        black = {lab: frozenset(w for w in tr.cnt[lab] if w not in tr.red[lab]) for lab in parts}
        self.levels[i] = LevelData(i, parts, tuple(part_of), red, black)

    def __getitem__(self, i: int) -> LevelData:
        return self.levels[i]

    def merge_at(self, i: int) -> tuple[int, int, int]:
        return self._merge[i]

    def red_adjacency(self, i: int) -> dict[int, frozenset[int]]:
        return self.levels[i].red


def restrict_sequence(seq: ContractionSequence, keep: Sequence[int]) -> tuple[ContractionSequence, list[int]]:
    """Sequence induced on a vertex subset, relabelled to ``0..k-1``.

    Parts are intersected with ``keep``; empty parts and repeated partitions
    are dropped.  Returns the new sequence and the old id of each new vertex.
    """
    old = sorted(set(keep))
    idx = {v: i for i, v in enumerate(old)}
    members = {v: ({idx[v]} if v in idx else set()) for v in range(seq.n)}
    merges = []
    for a, b in seq.merges:
        lo, hi = min(a, b), max(a, b)
        ma, mb = members[lo], members.pop(hi)
        if ma and mb:
            merges.append((min(ma), min(mb)))
        ma |= mb
    return ContractionSequence(len(old), merges), old
