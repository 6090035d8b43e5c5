"""Graph families with documented vertex layouts and witness sequences.

Layouts (all ids are 0-based):

* wall: row-major over rows ``j`` then positions ``i`` of ``[2n] x [n]``, with
  the two degree-1 vertices removed and the remaining ids compacted.
* Pohoata-Davies grid ``G_{k,g}``: path ``p`` position ``r`` is ``p*L + r`` with
  ``L = k + g(k-1)``; apex ``a`` is ``k*L + a``.
* clique-column and mixed grids: ``v_{i,j}`` (column ``i``, row ``j``, both
  1-based) is ``(i-1)q + (j-1)``, so ids follow the canonical ordering.
* 3-D grid: ``(x, y, z)`` is ``x*n*n + y*n + z``.
* subdivisions: original vertices first, then subdivision vertices edge by
  edge in sorted edge order.
* unit interval: ids sorted by left endpoint.
"""

from __future__ import annotations

from itertools import combinations

from .contraction import ContractionSequence, OrderedGraph
from .errors import AxiomViolation
from .graph import Graph, Partition

MASK64 = (1 << 64) - 1


class SplitMix64:
    """The splitmix64 generator; fixed so samples match across implementations."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` by rejection."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def coin(self, num: int = 1, den: int = 2) -> bool:
        return self.below(den) < num


def wall(n: int) -> Graph:
    if n < 3:
        raise ValueError("wall needs n >= 3")
    cells = [(i, j) for j in range(1, n + 1) for i in range(1, 2 * n + 1)]
    es = []
    for i, j in cells:
        if i < 2 * n:
            es.append(((i, j), (i + 1, j)))
        if j < n and (i + j) % 2 == 1:
            es.append(((i, j), (i, j + 1)))
    deg = {c: 0 for c in cells}
    for a, b in es:
        deg[a] += 1
        deg[b] += 1
    keep = [c for c in cells if deg[c] != 1]
    idx = {c: k for k, c in enumerate(keep)}
    return Graph(len(keep), [(idx[a], idx[b]) for a, b in es if a in idx and b in idx])


def subdivide(g: Graph, s: int) -> Graph:
    """Replace every edge by a path with ``s`` internal vertices."""
    if s < 0:
        raise ValueError("s must be non-negative")
    if s == 0:
        return Graph(g.n, g.edges)
    es = []
    nxt = g.n
    for u, v in g.sorted_edges():
        path = [u, *range(nxt, nxt + s), v]
        nxt += s
        es.extend(zip(path, path[1:]))
    return Graph(nxt, es)


def subdivided_wall(n: int, s: int) -> Graph:
    return subdivide(wall(n), s)


def pohoata_davies(k: int, g: int) -> tuple[Graph, ContractionSequence]:
    """The grid ``G_{k,g}`` and its three-phase witness sequence."""
    if k < 1 or g < 0:
        raise ValueError("need k >= 1 and g >= 0")
    L = k + g * (k - 1)
    es = []
    for p in range(k):
        base = p * L
        es.extend((base + r, base + r + 1) for r in range(L - 1))
    apex0 = k * L
    for a in range(k):
        r = a * (g + 1)
        es.extend((apex0 + a, p * L + r) for p in range(k))
    graph = Graph(k * L + k, es)
    merges = []
    for p in range(1, k):
        merges.extend((r, p * L + r) for r in range(L))
    merges.extend((a * (g + 1), apex0 + a) for a in range(k))
    merges.extend((0, r) for r in range(1, L))
    return graph, ContractionSequence(graph.n, merges)


def clique_column_grid(p: int, q: int) -> tuple[Graph, ContractionSequence]:
    """Columns are q-cliques joined by perfect matchings; row-sweep witness."""
    if p < 1 or q < 1:
        raise ValueError("need p, q >= 1")
    es = []
    for i in range(p):
        col = [i * q + j for j in range(q)]
        es.extend(combinations(col, 2))
        if i + 1 < p:
            es.extend((i * q + j, (i + 1) * q + j) for j in range(q))
    graph = Graph(p * q, es)
    merges = [(i * q, i * q + r) for r in range(1, q) for i in range(p)]
    merges.extend((0, i * q) for i in range(1, p))
    return graph, ContractionSequence(graph.n, merges)


def grid3d(n: int) -> Graph:
    if n < 1:
        raise ValueError("need n >= 1")

    def vid(x, y, z):
        return x * n * n + y * n + z

    es = []
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if x + 1 < n:
                    es.append((vid(x, y, z), vid(x + 1, y, z)))
                if y + 1 < n:
                    es.append((vid(x, y, z), vid(x, y + 1, z)))
                if z + 1 < n:
                    es.append((vid(x, y, z), vid(x, y, z + 1)))
    return Graph(n**3, es)


def subdivided_clique(n: int, s: int) -> Graph:
    if n < 2 or s < 1:
        raise ValueError("need n >= 2 and s >= 1")
    return subdivide(Graph(n, combinations(range(n), 2)), s)


UNIT = 1 << 20


def unit_interval(n: int, seed: int, density: float = 1.0) -> tuple[Graph, ContractionSequence]:
    """Random unit interval graph and a column-sweep witness sequence.

    Left endpoints are integers drawn from ``[0, span)`` with
    ``span = ceil(n / density) * UNIT``; each interval is ``[x, x + UNIT)`` and
    two vertices are adjacent iff their intervals overlap.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if density <= 0:
        raise ValueError("density must be positive")
    rng = SplitMix64(seed)
    span = max(1, -(-n * 1000 // int(density * 1000))) * UNIT
    draws = [(rng.below(span), k) for k in range(n)]
    xs = [x for x, _ in sorted(draws)]
    es = []
    for u in range(n):
        for v in range(u + 1, n):
            if xs[v] - xs[u] >= UNIT:
                break
            es.append((u, v))
    graph = Graph(n, es)
    return graph, ContractionSequence(n, unit_interval_sequence(xs))


def unit_interval_sequence(xs: list[int]) -> list[tuple[int, int]]:
    """Merges for sorted left endpoints ``xs`` (vertex v has endpoint xs[v]).

    Vertices are grouped into columns ``x // UNIT``.  Sweeping by offset
    ``x % UNIT`` (ties broken by column), each vertex joins the block of its
    column; afterwards the column blocks are collapsed left to right.  Every
    red graph of this sequence is a sub-path of the column blocks.
    """
    order = sorted(range(len(xs)), key=lambda v: (xs[v] % UNIT, xs[v] // UNIT, v))
    block: dict[int, int] = {}
    merges = []
    for v in order:
        c = xs[v] // UNIT
        if c in block:
            merges.append((block[c], v))
            block[c] = min(block[c], v)
        else:
            block[c] = v
    labels = [block[c] for c in sorted(block)]
    head = labels[0]
    for lab in labels[1:]:
        merges.append((head, lab))
        head = min(head, lab)
    return merges


def leftmost_pair_sequence(n: int) -> ContractionSequence:
    """Repeatedly merge the two leftmost live parts (ids in interval order)."""
    return ContractionSequence(n, [(0, v) for v in range(1, n)])


def check_mixed_grid_axioms(g: Graph, p: int, q: int) -> None:
    """Raise AxiomViolation unless ``g`` is a (p, q)-mixed grid in canonical layout."""
    if g.n != p * q:
        raise AxiomViolation("vertex count is not p*q")

    def v(i, j):
        return i * q + j

    for i in range(p):
        for a, b in combinations(range(q), 2):
            if not g.has_edge(v(i, a), v(i, b)):
                raise AxiomViolation(f"column {i + 1} is not a clique")
    for x, y in g.edges:
        if abs(x // q - y // q) >= 2:
            raise AxiomViolation(f"edge {x}-{y} joins columns at distance >= 2")
    for i in range(p - 1):
        for a, b in combinations(range(q), 2):
            if _homog_count(g, [v(i + 1, a), v(i + 1, b)], [v(i, a), v(i, b)]) > 1:
                raise AxiomViolation(f"rows {a + 1},{b + 1} between columns {i + 1},{i + 2}")
            if _homog_count(g, [v(i, a), v(i, b)], [v(i + 1, a), v(i + 1, b)]) > 1:
                raise AxiomViolation(f"rows {a + 1},{b + 1} between columns {i + 1},{i + 2}")


def _homog_count(g: Graph, xs, ys) -> int:
    c = 0
    for x in xs:
        hits = sum(1 for y in ys if g.has_edge(x, y))
        if hits in (0, len(ys)):
            c += 1
    return c


def _column_pair_ok(adj, q: int, i: int) -> bool:
    def v(ii, j):
        return ii * q + j

    for a, b in combinations(range(q), 2):
        lo = [v(i, a), v(i, b)]
        hi = [v(i + 1, a), v(i + 1, b)]
        for xs, ys in ((hi, lo), (lo, hi)):
            c = 0
            for x in xs:
                hits = sum(1 for y in ys if y in adj[x])
                if hits in (0, 2):
                    c += 1
            if c > 1:
                return False
    return True


def mixed_grid(p: int, q: int, seed: int) -> tuple[OrderedGraph, Partition]:
    """Random (p, q)-mixed grid with canonical ordering and column partition.

    Starts from the clique-column pattern and offers every cross pair between
    consecutive columns once, in a seeded random order, keeping it when the
    axioms still hold.
    """
    if p < 1 or q < 1:
        raise ValueError("need p, q >= 1")
    rng = SplitMix64(seed)
    adj: list[set[int]] = [set() for _ in range(p * q)]

    def add(x, y):
        adj[x].add(y)
        adj[y].add(x)

    for i in range(p):
        for a, b in combinations(range(q), 2):
            add(i * q + a, i * q + b)
        if i + 1 < p:
            for j in range(q):
                add(i * q + j, (i + 1) * q + j)
    for i in range(p - 1):
        cands = [(i * q + a, (i + 1) * q + b) for a in range(q) for b in range(q) if a != b]
        for k in range(len(cands) - 1, 0, -1):
            r = rng.below(k + 1)
            cands[k], cands[r] = cands[r], cands[k]
        for x, y in cands:
            if not rng.coin():
                continue
            add(x, y)
            if not _column_pair_ok(adj, q, i):
                adj[x].discard(y)
                adj[y].discard(x)
    es = [(x, y) for x in range(p * q) for y in adj[x] if x < y]
    graph = Graph(p * q, es)
    check_mixed_grid_axioms(graph, p, q)
    order = tuple(range(1, p * q + 1))
    part = Partition.from_parts(p * q, [range(i * q, (i + 1) * q) for i in range(p)])
    return OrderedGraph(graph, order), part


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_sequence(n: int) -> ContractionSequence:
    """Left-to-right merges (0,1), (0,2), ...; the natural witness for paths."""
    return ContractionSequence(n, [(0, v) for v in range(1, n)])


def random_graph(n: int, seed: int, num: int = 1, den: int = 2) -> Graph:
    """G(n, num/den) sampled with splitmix64."""
    rng = SplitMix64(seed)
    return Graph(n, [(u, v) for u, v in combinations(range(n), 2) if rng.coin(num, den)])


def _random_family(n, seed=0, p="1/2"):
    from fractions import Fraction

    from .contraction import star_sequence

    f = Fraction(str(p))
    g = random_graph(n, seed, f.numerator, f.denominator)
    return g, star_sequence(g)


FAMILIES = {
    "pd-grid": (lambda k, g=0: pohoata_davies(k, g)),
    "clique-column": (lambda p, q: clique_column_grid(p, q)),
    "unit-interval": (lambda n, seed=0, density=1.0: unit_interval(n, seed, density)),
    "path": (lambda n: (path_graph(n), path_sequence(n))),
    "cycle": (lambda n: (cycle_graph(n), path_sequence(n))),
    "random": _random_family,
    "wall": (lambda n, s=0: (subdivided_wall(n, s), None)),
    "grid3d": (lambda n: (grid3d(n), None)),
    "subdivided-clique": (lambda n, s=1: (subdivided_clique(n, s), None)),
}


def build_family(name: str, **params) -> tuple[Graph, ContractionSequence | None]:
    """Graph and witness (``None`` when the family has none) by family name."""
    try:
        make = FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from {', '.join(sorted(FAMILIES))}") from None
    return make(**params)
