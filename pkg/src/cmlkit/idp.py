"""Induced disjoint paths along a contraction sequence.

Input: a graph and terminal pairs ``(x_1, y_1), ..., (x_l, y_l)``; output:
mutually induced paths joining every pair, or ``None``.

Table entries are keyed by ``(i, H, S, A, J)``:

* ``H``: connected red-induced part set of ``G/P_i`` (no black edge inside);
* ``S``: boundary vertices outside ``H`` where paths leave the region, each
  with a multiplicity 1 or 2 (the number of path ends it carries);
* ``A``: boundary vertices outside ``H`` that must see no interior path vertex;
* ``J``: the multiset of end pairs covering every ``S`` occurrence and every
  terminal inside ``H``.

``S`` and ``A`` live in parts that are red, not black, neighbours of ``H``,
at most two such vertices per part.  A family ``Z`` of paths is valid for the
key when every path has at least one vertex inside ``H`` and all inner
vertices inside ``H``, the end pairs of ``Z`` are ``J``, and, with ``I`` the
path vertices outside ``S``, the graph ``G[I | S]`` minus the edges inside
``S`` is exactly the union of the path edges, with no edge from ``I`` to
``A``.  All ``J`` of one ``(i, H, S, A)`` are produced together.
"""

from __future__ import annotations

import sys
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, product
from typing import Hashable, Iterable, Iterator, Sequence

from .contraction import ContractionSequence, SequenceLevels, verify_witness
from .dpcommon import DPStats, red_black_around, split_components
from .errors import BoundViolation, EmptyGraph, InternalValidityFailure, InvalidInstance
from .graph import Graph
from .oracles import mutually_induced


@dataclass(frozen=True)
class IdpInstance:
    graph: Graph
    pairs: tuple[tuple[int, int], ...]

    def __init__(self, graph: Graph, pairs: Iterable[tuple[int, int]]):
        ps = tuple((int(x), int(y)) for x, y in pairs)
        seen: set[int] = set()
        for x, y in ps:
            if not (0 <= x < graph.n and 0 <= y < graph.n):
                raise InvalidInstance(f"terminal out of range in pair ({x},{y})")
            if x == y:
                raise InvalidInstance(f"pair ({x},{y}) joins a vertex to itself")
            if x in seen or y in seen:
                raise InvalidInstance("terminals must be pairwise distinct")
            seen.update((x, y))
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "pairs", ps)

    @property
    def terminals(self) -> frozenset[int]:
        return frozenset(v for p in self.pairs for v in p)


def paths_solve_instance(inst: IdpInstance, paths) -> bool:
    """Raw check: one path per pair, in order, all mutually induced."""
    if paths is None or len(paths) != len(inst.pairs):
        return False
    for (x, y), p in zip(inst.pairs, paths):
        if {p[0], p[-1]} != {x, y}:
            return False
    return mutually_induced(inst.graph, paths)


# -- merging end pairs ------------------------------------------------------


@dataclass(frozen=True)
class MergeResult:
    ok: bool
    endpairs: tuple[tuple, ...] = ()
    walks: tuple[tuple, ...] = ()
    reason: str = ""


def merge_pairings(pairings: Iterable[Iterable[Sequence[Hashable]]]) -> MergeResult:
    """Glue pairings into an auxiliary multigraph and read off its end pairs.

    Every pair ``(v, w)`` becomes an edge; a 1-tuple ``(v,)`` adds ``v`` as an
    isolated vertex.  The result is accepted when the graph is a disjoint union
    of paths of length at least 1.  ``walks`` lists each path as a vertex
    sequence starting from its smaller-ranked end.
    """
    adj: dict = defaultdict(list)
    nodes = []
    seen = set()
    eid = 0
    for pairing in pairings:
        for pr in pairing:
            pr = tuple(pr)
            for v in pr:
                if v not in seen:
                    seen.add(v)
                    nodes.append(v)
            if len(pr) == 1:
                continue
            if len(pr) != 2 or pr[0] == pr[1]:
                return MergeResult(False, reason=f"malformed pair {pr!r}")
            v, w = pr
            adj[v].append((w, eid))
            adj[w].append((v, eid))
            eid += 1
    for v in nodes:
        d = len(adj[v])
        if d == 0:
            return MergeResult(False, reason=f"isolated vertex {v!r}")
        if d > 2:
            return MergeResult(False, reason=f"vertex {v!r} has degree {d}")
    used = set()
    walks = []
    for v in nodes:
        if len(adj[v]) != 1 or v in used:
            continue
        walk = [v]
        used.add(v)
        prev_e = None
        cur = v
        while True:
            nxt = [(w, e) for w, e in adj[cur] if e != prev_e]
            if not nxt:
                break
            w, e = nxt[0]
            walk.append(w)
            used.add(w)
            prev_e, cur = e, w
            if len(adj[w]) == 1:
                break
        walks.append(tuple(walk))
    if len(used) != len(nodes):
        return MergeResult(False, reason="cycle")
    ends = tuple(sorted((_pair_key(w[0], w[-1]) for w in walks), key=repr))
    return MergeResult(True, ends, tuple(walks))


def _pair_key(a, b):
    return (a, b) if repr(a) <= repr(b) else (b, a)


# -- separators -------------------------------------------------------------


@dataclass(frozen=True)
class IdpSeparator:
    O: frozenset[int]
    U: frozenset[int]
    paths: tuple[tuple[int, ...], ...]


def _is_linear_forest(g: Graph, vs: frozenset[int]) -> bool:
    if any(len(g.adj[v] & vs) > 2 for v in vs):
        return False
    m = sum(len(g.adj[v] & vs) for v in vs) // 2
    comps = 0
    rest = set(vs)
    while rest:
        comps += 1
        stack = [rest.pop()]
        while stack:
            x = stack.pop()
            for y in g.adj[x] & vs:
                if y in rest:
                    rest.discard(y)
                    stack.append(y)
    return m == len(vs) - comps


def _forest_paths(g: Graph, vs: frozenset[int]) -> tuple[tuple[int, ...], ...]:
    out = []
    left = set(vs)
    for v in sorted(vs):
        if v not in left or len(g.adj[v] & vs) == 2:
            continue
        walk = [v]
        left.discard(v)
        cur = v
        while True:
            nxt = [w for w in g.adj[cur] & vs if w in left]
            if not nxt:
                break
            cur = nxt[0]
            left.discard(cur)
            walk.append(cur)
        out.append(tuple(walk))
    return tuple(out)


def enumerate_idp_separators(
    g: Graph,
    parts: dict[int, frozenset[int]],
    black: dict[int, frozenset[int]],
    p1: int,
    p2: int,
    q1: Iterable[int],
    q2: Iterable[int],
    pstar_fixed: frozenset[int] | None = None,
    vertex_ok=None,
    must: frozenset[int] = frozenset(),
) -> Iterator[IdpSeparator]:
    """IDP separators for ``(p1, p2, q1, q2)`` in a deterministic order.

    ``U`` has at most two vertices per part of ``O`` and its free part induces
    a linear forest (isolated vertices allowed).  With ``pstar_fixed`` both
    ``p1`` and ``p2`` are in ``O`` and ``U`` meets them exactly in
    ``pstar_fixed``.  Vertices of ``must`` inside a free part of ``O`` are
    always taken into ``U``.
    """
    q = (tuple(sorted(q1)), tuple(sorted(q2)))
    ps = (p1, p2)
    universe = {p1, p2, *q[0], *q[1]}

    def side_options(j):
        # (P_j in O, Q_j in O, U may use this side)
        if pstar_fixed is not None:
            opts = [(True, False, not q[j])]
        else:
            opts = [(False, False, False), (True, False, not q[j])]
            if q[j]:
                opts.append((False, True, False))
        if q[j]:
            opts.append((True, True, True))
        return opts

    fixed_all = pstar_fixed if pstar_fixed is not None else frozenset()
    seen: set = set()
    for s1, s2 in product(side_options(0), side_options(1)):
        O = set()
        for j, (in_p, in_q, _) in enumerate((s1, s2)):
            if in_p:
                O.add(ps[j])
            if in_q:
                O.update(q[j])
        empty = set()
        ok = True
        for x in universe - O:
            for y in black[x] & universe:
                if y not in O:
                    ok = False
                    break
                empty.add(y)
            if not ok:
                break
        if not ok:
            continue
        # one block per part; a part of Q1 and Q2 may hold U if either side allows it
        usable: dict[int, bool] = {}
        for j, (in_p, in_q, use) in enumerate((s1, s2)):
            for x in ([ps[j]] if in_p else []) + (list(q[j]) if in_q else []):
                usable[x] = usable.get(x, False) or use
        blocks = []
        for x, use in usable.items():
            if pstar_fixed is not None and x in ps:
                fixed = pstar_fixed & parts[x]
                if fixed and (x in empty or not use):
                    ok = False
                    break
                blocks.append([fixed])
            elif not use or x in empty:
                if must & parts[x]:
                    ok = False
                    break
                blocks.append([frozenset()])
            else:
                blocks.append(_idp_subsets(parts[x], vertex_ok, must))
        if not ok:
            continue
        O = frozenset(O)
        for U in _grow(g, blocks, fixed_all):
            if (O, U) in seen:
                continue
            seen.add((O, U))
            free = U - fixed_all
            yield IdpSeparator(O, U, _forest_paths(g, free))


def _idp_subsets(part, vertex_ok, must):
    forced = frozenset(part & must)
    if len(forced) > 2:
        return []
    pool = sorted(v for v in part if v not in forced and (vertex_ok is None or vertex_ok(v)))
    if any(vertex_ok is not None and not vertex_ok(v) for v in forced):
        return []
    out = []
    for r in range(3 - len(forced)):
        for c in combinations(pool, r):
            out.append(forced | frozenset(c))
    return out


def _grow(g, blocks, fixed_all):
    def rec(k, acc):
        if k == len(blocks):
            if _is_linear_forest(g, acc - fixed_all):
                yield acc
            return
        for piece in blocks[k]:
            nxt = acc | piece
            free = nxt - fixed_all
            if any(len(g.adj[v] & free) > 2 for v in piece - fixed_all):
                continue
            yield from rec(k + 1, nxt)

    yield from rec(0, frozenset())


# -- solver -----------------------------------------------------------------


@dataclass(frozen=True)
class IdpCertNode:
    level: int
    key: tuple
    J: tuple
    kind: str  # "base", "copy", "empty", "split"
    O: frozenset[int] = frozenset()
    U: frozenset[int] = frozenset()
    children: tuple["IdpCertNode", ...] = ()


@dataclass
class IdpResult:
    feasible: bool
    paths: tuple[tuple[int, ...], ...] | None
    certificate: IdpCertNode | None
    stats: DPStats


def _canon_pairs(pairs) -> tuple:
    return tuple(sorted(tuple(sorted(p)) for p in pairs))


class IdpSolver:
    """Table evaluation for one instance and sequence.

    ``self.memo[i][(H, S, A)]`` maps each achievable ``J`` to
    ``(paths, branch)``, where ``paths`` maps each end pair to its vertex
    sequence and ``branch`` records how the entry was obtained.
    """

    def __init__(self, inst: IdpInstance, seq: ContractionSequence, t: int | None = None, check_keys=False):
        g = inst.graph
        if g.n == 0:
            raise EmptyGraph("IDP on the empty graph")
        if t is None:
            t = verify_witness(g, seq).witnessed
        self.inst = inst
        self.g = g
        self.T = inst.terminals
        self.levels = SequenceLevels(g, seq)
        self.n = g.n
        self.t = t
        self.check_keys = check_keys
        self.memo: dict[int, dict] = {i: {} for i in range(1, g.n + 1)}
        self.stats = DPStats(g.n, t)
        self.sep_bound = 4 * self.n**6

    # -- table access ---------------------------------------------------
    def profile(self, i: int, H: frozenset[int], S: tuple, A: frozenset[int]) -> dict:
        key = (H, S, A)
        hit = self.memo[i].get(key)
        if hit is None:
            hit = self._compute(i, H, S, A)
            self.memo[i][key] = hit
            if self.check_keys:
                for J, (paths, _) in hit.items():
                    if not self.entry_is_valid(i, H, S, A, J, paths):
                        raise InternalValidityFailure(f"IDP entry at level {i} is not valid for its key")
        return hit

    def _terminals_in(self, lev, H) -> list[int]:
        return sorted(v for v in self.T if lev.part_of[v] in H)

    def _compute(self, i, H, S, A):
        lev = self.levels[i]
        if not S and not self._terminals_in(lev, H):
            return {(): ({}, ("empty",))}
        if i == self.n:
            return {}
        a, b, ps = self.levels.merge_at(i)
        if ps not in H:
            red, black = red_black_around(lev, H)
            known = {v for v, _ in S} | A
            if ps not in red or ps in black or not (known & lev.parts[ps]):
                sub = self.profile(i + 1, H, S, A)
                return {J: (p, ("copy",)) for J, (p, _) in sub.items()}
        return self._general(i, H, S, A, a, b, ps)

    def _general(self, i, H, S, A, a, b, ps):
        g, T = self.g, self.T
        lev1 = self.levels[i + 1]
        mult = dict(S)
        s_set = frozenset(mult)
        in_h = ps in H
        hrest = H - {ps} if in_h else H
        pstar = lev1.parts[a] | lev1.parts[b]
        fixed = None if in_h else (s_set | A) & pstar

        def vertex_ok(v):
            if g.adj[v] & A:
                return False
            return len(g.adj[v] & s_set) <= (1 if v in T else 2)

        out: dict = {}
        count = 0
        for sep in enumerate_idp_separators(
            g,
            lev1.parts,
            lev1.black,
            a,
            b,
            lev1.black[a] & hrest,
            lev1.black[b] & hrest,
            pstar_fixed=fixed,
            vertex_ok=vertex_ok,
            must=T,
        ):
            count += 1
            for J, paths, keys in self._combine(i, mult, A, hrest | {a, b}, sep.O, sep.U):
                if J not in out:
                    out[J] = (paths, ("split", sep.O, sep.U, keys))
        self.stats.note_separators(count, self.sep_bound)
        return out

    def _boundary(self, mult, A, U):
        """Real path edges fixed by ``U`` and the path ends still missing per vertex."""
        g, T = self.g, self.T
        s_set = frozenset(mult)
        u_in = U - s_set - A
        if any(g.adj[u] & A for u in u_in):
            return None
        edges = []
        for u in sorted(u_in):
            for w in sorted(g.adj[u] & (u_in | s_set)):
                if w in s_set or u < w:
                    edges.append((u, w))
        deg = defaultdict(int)
        for u, w in edges:
            deg[u] += 1
            deg[w] += 1
        need = {}
        for u in u_in:
            c = (1 if u in T else 2) - deg[u]
            if c < 0:
                return None
            need[u] = c
        for s, m in mult.items():
            c = m - deg[s]
            if c < 0:
                return None
            need[s] = c
        return u_in, edges, need

    def _combine(self, i, mult, A, F, O, U):
        """Yield ``(J, paths, sub-keys)`` reachable with the separator ``(O, U)``."""
        g, T = self.g, self.T
        lev1 = self.levels[i + 1]
        bnd = self._boundary(mult, A, U)
        if bnd is None:
            return
        u_in, edges, need = bnd
        known = u_in | frozenset(mult) | A
        comps = split_components(lev1, F, O)
        self.stats.note_components(len(comps))
        live = []
        for comp in comps:
            red, black = red_black_around(lev1, comp)
            terms = [v for v in T if lev1.part_of[v] in comp]
            if any(lev1.part_of[v] in black for v in known):
                if terms:
                    return  # a fixed vertex sees this region blackly, so it must stay empty
                continue
            kj = frozenset(v for v in known if lev1.part_of[v] in red)
            live.append((comp, kj))
        deficit = sorted(v for v, c in need.items() if c > 0)
        choices = []
        for v in deficit:
            elig = [j for j, (_, kj) in enumerate(live) if v in kj]
            opts = list(combinations_with_replacement(elig, need[v]))
            if not opts:
                return
            choices.append(opts)
        for assign in product(*choices):
            per = [defaultdict(int) for _ in live]
            for v, js in zip(deficit, assign):
                for j in js:
                    per[j][v] += 1
            subs = []
            dead = False
            for j, (comp, kj) in enumerate(live):
                sj = tuple(sorted(per[j].items()))
                aj = kj - frozenset(per[j])
                prof = self.profile(i + 1, comp, sj, aj)
                if not prof:
                    dead = True
                    break
                subs.append(((comp, sj, aj), prof))
            if dead:
                continue
            yield from self._glue(mult, edges, subs)

    def _glue(self, mult, edges, subs):
        s_count = defaultdict(int)

        def node(v):
            # every path end at a boundary vertex gets its own node
            if v in mult:
                s_count[v] += 1
                return ("s", v, s_count[v])
            return ("v", v)

        for combo in product(*(sorted(p.items()) for _, p in subs)):
            s_count.clear()
            real = [(node(u), node(w)) for u, w in edges]
            virtual = []
            pieces = {}
            for (key, _), (J_j, (paths_j, _)) in zip(subs, combo):
                for pr in J_j:
                    x, y = node(pr[0]), node(pr[1])
                    virtual.append((x, y))
                    pieces[(x, y)] = paths_j[pr]
            res = merge_pairings([real, virtual])
            if not res.ok:
                continue
            built = {}
            for walk in res.walks:
                vs = [walk[0][1]]
                for x, y in zip(walk, walk[1:]):
                    if (x, y) in pieces:
                        seg = pieces[(x, y)]
                    elif (y, x) in pieces:
                        seg = pieces[(y, x)]
                    else:
                        seg = (x[1], y[1])
                    if seg[0] != vs[-1]:
                        seg = seg[::-1]
                    vs.extend(seg[1:])
                pr = tuple(sorted((vs[0], vs[-1])))
                if pr in built:
                    # two paths with one end pair close a cycle through boundary vertices
                    built = None
                    break
                built[pr] = tuple(vs) if vs[0] <= vs[-1] else tuple(reversed(vs))
            if built is None:
                continue
            J = _canon_pairs(built)
            keys = tuple((key, J_j) for (key, _), (J_j, _) in zip(subs, combo))
            yield J, built, keys

    # -- checking ---------------------------------------------------------
    def entry_is_valid(self, i, H, S, A, J, paths) -> bool:
        g, T = self.g, self.T
        lev = self.levels[i]
        mult = dict(S)
        inside = lambda v: lev.part_of[v] in H  # noqa: E731
        ends = []
        used = []
        for pr, p in paths.items():
            if tuple(sorted((p[0], p[-1]))) != pr or len(p) < 2 or len(set(p)) != len(p):
                return False
            if not any(inside(v) for v in p):
                return False
            if not all(inside(v) for v in p[1:-1]):
                return False
            for v in (p[0], p[-1]):
                if not (inside(v) or v in mult):
                    return False
            ends.append(pr)
            used.extend(v for v in p if v not in mult)
        if _canon_pairs(ends) != J:
            return False
        I = set(used)
        if len(I) != len(used):
            return False
        want = sorted(v for v in T if inside(v))
        got = sorted(v for pr in J for v in pr if v not in mult)
        if want != got:
            return False
        occ = defaultdict(int)
        for pr in J:
            for v in pr:
                if v in mult:
                    occ[v] += 1
        if dict(occ) != {v: m for v, m in mult.items()}:
            return False
        path_edges = set()
        for p in paths.values():
            for x, y in zip(p, p[1:]):
                path_edges.add((min(x, y), max(x, y)))
        span = I | set(mult)
        for x in I:
            if g.adj[x] & A:
                return False
            for y in g.adj[x] & span:
                if (min(x, y), max(x, y)) not in path_edges:
                    return False
        for x, y in path_edges:
            if x in mult and y in mult:
                return False
        return True

    # -- driver -----------------------------------------------------------------
    def solve(self) -> IdpResult:
        limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(limit, 30 * self.n + 1000))
        root = frozenset(self.levels[1].parts)
        target = _canon_pairs(self.inst.pairs)
        try:
            prof = self.profile(1, root, (), frozenset())
        finally:
            sys.setrecursionlimit(limit)
        self.stats.finish_levels(self.memo, entries=len)
        self._check_key_bound()
        hit = prof.get(target)
        if hit is None:
            return IdpResult(False, None, None, self.stats)
        paths = hit[0]
        ordered = []
        for x, y in self.inst.pairs:
            p = paths[tuple(sorted((x, y)))]
            ordered.append(p if p[0] == x else tuple(reversed(p)))
        ordered = tuple(ordered)
        if not paths_solve_instance(self.inst, ordered):
            raise InternalValidityFailure("assembled paths are not mutually induced")
        cert = self.certificate(1, (root, (), frozenset()), target)
        return IdpResult(True, ordered, cert, self.stats)

    def _check_key_bound(self):
        n, t, l = self.n, self.t, len(self.inst.pairs)
        bound = n ** (3 * t) * (2 * t + 1) * (2 * t + 2 * l) ** (2 * t)
        worst = max(self.stats.keys_per_level.values(), default=0)
        if worst > bound:
            raise BoundViolation(f"{worst} IDP keys at one level exceed {bound}")

    def certificate(self, i, key, J) -> IdpCertNode:
        paths, branch = self.memo[i][key][J]
        kind = branch[0]
        if kind == "copy":
            return IdpCertNode(i, key, J, "copy", children=(self.certificate(i + 1, key, J),))
        if kind != "split":
            return IdpCertNode(i, key, J, kind)
        _, O, U, keys = branch
        kids = tuple(self.certificate(i + 1, k, J_j) for k, J_j in keys)
        return IdpCertNode(i, key, J, "split", O=O, U=U, children=kids)

    def replay(self, node: IdpCertNode) -> dict:
        """Re-assemble the paths of a certificate node from its recorded branch."""
        if node.kind == "empty":
            return {}
        if node.kind == "copy":
            return self.replay(node.children[0])
        if node.kind != "split":
            raise InternalValidityFailure(f"unexpected certificate node {node.kind}")
        H, S, A = node.key
        mult = dict(S)
        bnd = self._boundary(mult, A, node.U)
        if bnd is None:
            raise InternalValidityFailure("certificate separator no longer fits its key")
        _, edges, _ = bnd
        subs = []
        for child in node.children:
            sub_paths = self.replay(child)
            subs.append((child.key, {child.J: (sub_paths, None)}))
        for J, built, _ in self._glue(mult, edges, subs):
            if J == node.J:
                return built
        raise InternalValidityFailure("certificate does not reproduce its end pairs")


def solve_idp(inst: IdpInstance, seq: ContractionSequence, t: int | None = None, check_keys: bool = False) -> IdpResult:
    """Mutually induced paths for ``inst`` computed along ``seq``, or infeasible."""
    return IdpSolver(inst, seq, t=t, check_keys=check_keys).solve()
