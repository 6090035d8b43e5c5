"""Brute-force reference implementations used to check the solvers.

Nothing here reuses solver code; only the Graph type is shared.
"""

from __future__ import annotations

from itertools import combinations

from .errors import CapExceeded, DisconnectedInput, EmptyGraph, InvalidInstance
from .graph import Graph


def oracle_sigma(g: Graph, sigma, cap: int = 20) -> tuple[int, tuple[int, ...]]:
    """Largest set with every inside degree in ``sigma``; lexicographically smallest among them."""
    if g.n > cap:
        raise CapExceeded(f"oracle_sigma limited to n <= {cap}")
    allowed = frozenset(getattr(sigma, "sigma", sigma))
    masks = [0] * g.n
    for u, v in g.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    for size in range(g.n, 0, -1):
        for combo in combinations(range(g.n), size):
            m = 0
            for v in combo:
                m |= 1 << v
            if all(bin(masks[v] & m).count("1") in allowed for v in combo):
                return size, combo
    return 0, ()


def mutually_induced(g: Graph, paths) -> bool:
    """Paths are vertex-disjoint, each induced, with no edge between two of them."""
    owner = {}
    for k, p in enumerate(paths):
        if len(p) < 1 or len(set(p)) != len(p):
            return False
        for v in p:
            if v in owner:
                return False
            owner[v] = k
    for k, p in enumerate(paths):
        pos = {v: r for r, v in enumerate(p)}
        for r in range(len(p) - 1):
            if p[r + 1] not in g.adj[p[r]]:
                return False
        for v in p:
            for w in g.adj[v]:
                kw = owner.get(w)
                if kw is None:
                    continue
                if kw != k:
                    return False
                if abs(pos[v] - pos[w]) != 1:
                    return False
    return True


def _check_pairs(g: Graph, pairs):
    seen = set()
    for x, y in pairs:
        if not (0 <= x < g.n and 0 <= y < g.n):
            raise InvalidInstance(f"terminal out of range in pair ({x},{y})")
        if x == y:
            raise InvalidInstance(f"pair ({x},{y}) has equal terminals")
        if x in seen or y in seen:
            raise InvalidInstance("terminals must be pairwise distinct")
        seen.update((x, y))


def oracle_idp(g: Graph, pairs, cap: int = 16, max_pairs: int = 3):
    """Mutually induced paths joining each pair, or ``None`` when impossible.

    Depth-first over the pairs: for each pair every induced path avoiding the
    closed neighbourhoods of the earlier paths is tried in turn.
    """
    if g.n > cap:
        raise CapExceeded(f"oracle_idp limited to n <= {cap}")
    if len(pairs) > max_pairs:
        raise CapExceeded(f"oracle_idp limited to {max_pairs} pairs")
    pairs = [tuple(p) for p in pairs]
    _check_pairs(g, pairs)
    terminals = {v for p in pairs for v in p}

    def induced_paths(x, y, blocked):
        # simple induced paths x..y avoiding ``blocked``
        out = []

        def rec(path, onpath):
            v = path[-1]
            if v == y:
                out.append(tuple(path))
                return
            for w in sorted(g.adj[v]):
                if w in blocked or w in onpath:
                    continue
                if w != y and w in terminals:
                    continue
                # w may touch only v among the path vertices
                if any(u in onpath for u in g.adj[w] if u != v):
                    continue
                path.append(w)
                onpath.add(w)
                rec(path, onpath)
                path.pop()
                onpath.discard(w)

        if x not in blocked and y not in blocked:
            rec([x], {x})
        return out

    def solve(k, blocked, chosen):
        if k == len(pairs):
            return list(chosen)
        x, y = pairs[k]
        for p in induced_paths(x, y, blocked):
            closed = set(p)
            for v in p:
                closed |= g.adj[v]
            res = solve(k + 1, blocked | closed, chosen + [p])
            if res is not None:
                return res
        return None

    return solve(0, frozenset(), [])


def oracle_max_leaf(g: Graph, cap: int = 10) -> int:
    """Max leaves over spanning trees, by filtering all (n-1)-edge subsets."""
    if g.n == 0:
        raise EmptyGraph("max-leaf of the empty graph")
    if g.n > cap:
        raise CapExceeded(f"oracle_max_leaf limited to n <= {cap}")
    if g.n == 1:
        return 1
    edges = sorted(g.edges)
    best = 0
    for sub in combinations(edges, g.n - 1):
        parent = list(range(g.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        acyclic = True
        deg = [0] * g.n
        for u, v in sub:
            ru, rv = find(u), find(v)
            if ru == rv:
                acyclic = False
                break
            parent[ru] = rv
            deg[u] += 1
            deg[v] += 1
        if acyclic:
            best = max(best, sum(1 for d in deg if d == 1))
    if best == 0:
        raise DisconnectedInput("graph has no spanning tree")
    return best
