"""Maximum sigma-neighbourhood sets from a contraction sequence.

Given a finite set ``sigma`` of non-negative integers, find a largest ``I`` such
that every ``v`` in ``I`` has ``|N(v) & I|`` in ``sigma``.  The dynamic program
keeps, for each level ``i`` of the sequence, entries keyed by ``(H, S, eta)``:

* ``H``: a set of part labels of ``G/P_i`` that is connected in the red graph
  and has no black edge inside;
* ``S``: solution vertices fixed outside ``H``, at most ``alpha`` per part and
  only in parts that are red but not black neighbours of ``H``;
* ``eta``: for each ``s`` in ``S``, the exact number of its neighbours in the
  partial solution.

An entry stores a largest ``I`` inside the parts of ``H`` meeting every part of
``H`` such that each ``v`` in ``I`` has ``|N(v) & (I | S)|`` in ``sigma`` and
each ``s`` in ``S`` has ``|N(s) & I| = eta(s)``, or ``None`` when there is none.
Entries are computed on demand, so only keys reachable from the top are
materialised.
"""

from __future__ import annotations

import sys
from math import comb
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator

from .contraction import ContractionSequence, SequenceLevels, verify_witness
from .dpcommon import DPStats, red_black_around, split_components
from .errors import BoundViolation, EmptyGraph, InternalValidityFailure, InvalidInstance
from .graph import Graph


@dataclass(frozen=True)
class SigmaSpec:
    sigma: frozenset[int]

    def __init__(self, sigma: Iterable[int]):
        s = frozenset(int(x) for x in sigma)
        if not s:
            raise InvalidInstance("sigma must be non-empty")
        if min(s) < 0:
            raise InvalidInstance("sigma must contain non-negative integers only")
        object.__setattr__(self, "sigma", s)

    @property
    def alpha(self) -> int:
        return max(self.sigma)

    @classmethod
    def parse(cls, text: str) -> "SigmaSpec":
        try:
            return cls(int(x) for x in text.split(",") if x.strip())
        except ValueError as exc:
            raise InvalidInstance(f"bad sigma list {text!r}") from exc

    def __contains__(self, x: int) -> bool:
        return x in self.sigma

    def __str__(self) -> str:
        return "{" + ",".join(map(str, sorted(self.sigma))) + "}"


def is_sigma_set(g: Graph, spec: SigmaSpec, vs: Iterable[int]) -> bool:
    s = set(vs)
    return all(len(g.adj[v] & s) in spec.sigma for v in s)


@dataclass(frozen=True)
class SigmaSeparator:
    O: frozenset[int]
    U: frozenset[int]


def enumerate_sigma_separators(
    g: Graph,
    parts: dict[int, frozenset[int]],
    black: dict[int, frozenset[int]],
    p1: int,
    p2: int,
    q1: Iterable[int],
    q2: Iterable[int],
    alpha: int,
    pstar_fixed: frozenset[int] | None = None,
    vertex_ok=None,
) -> Iterator[SigmaSeparator]:
    """All sigma-separators for ``(p1, p2, q1, q2)`` in a deterministic order.

    ``parts`` and ``black`` describe the quotient the labels live in.  With
    ``pstar_fixed`` both ``p1`` and ``p2`` must be in ``O`` and ``U`` must agree
    with ``pstar_fixed`` on ``p1 | p2``.  ``vertex_ok`` optionally filters which
    free vertices may enter ``U``.
    """
    q = (tuple(sorted(q1)), tuple(sorted(q2)))
    ps = (p1, p2)
    universe = {p1, p2, *q[0], *q[1]}

    def side_options(j):
        opts = [] if pstar_fixed is not None else [(False, False)]
        opts.append((True, False))
        if q[j] and len(q[j]) <= alpha:
            opts.append((True, True))
        return opts

    seen: set = set()
    for (in_p1, in_q1), (in_p2, in_q2) in product(side_options(0), side_options(1)):
        O = set()
        if in_p1:
            O.add(p1)
        if in_p2:
            O.add(p2)
        if in_q1:
            O.update(q[0])
        if in_q2:
            O.update(q[1])
        # black pair condition at the part level
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
        blocks = []
        for j in range(2):
            pj = ps[j]
            if pj not in O:
                continue
            if pstar_fixed is not None:
                fixed = pstar_fixed & parts[pj]
                if fixed and pj in empty:
                    ok = False
                    break
                blocks.append([fixed])
            elif pj in empty:
                blocks.append([frozenset()])
            else:
                blocks.append(_small_subsets(parts[pj], alpha, vertex_ok))
        if not ok:
            continue
        for j, in_q in ((0, in_q1), (1, in_q2)):
            if not in_q:
                continue
            if any(x in empty for x in q[j]):
                ok = False
                break
            blocks.append(_hitting_sets(q[j], parts, alpha, vertex_ok))
        if not ok:
            continue
        O = frozenset(O)
        for combo in product(*blocks):
            U = frozenset().union(*combo)
            if (O, U) not in seen and all(len(g.adj[v] & U) <= alpha for v in U):
                seen.add((O, U))
                yield SigmaSeparator(O, U)


def _small_subsets(part, k, vertex_ok):
    pool = sorted(v for v in part if vertex_ok is None or vertex_ok(v))
    return [frozenset(c) for r in range(k + 1) for c in combinations(pool, r)]


def _hitting_sets(qs, parts, k, vertex_ok):
    """Sets with at least one vertex in each part of ``qs`` and at most ``k`` in total."""
    pools = [sorted(v for v in parts[x] if vertex_ok is None or vertex_ok(v)) for x in qs]
    out = []

    def rec(j, acc, left):
        if j == len(pools):
            out.append(frozenset(acc))
            return
        need_after = len(pools) - j - 1
        for r in range(1, left - need_after + 1):
            for c in combinations(pools[j], r):
                rec(j + 1, acc + c, left - r)

    if len(qs) <= k:
        rec(0, (), k)
    return out


@dataclass
class SigmaResult:
    size: int
    vertices: tuple[int, ...]
    certificate: "CertNode | None"
    stats: DPStats


@dataclass(frozen=True)
class CertNode:
    """One table entry used by the answer, with the branch that produced it."""

    level: int
    H: frozenset[int]
    S: frozenset[int]
    eta: tuple[tuple[int, int], ...]
    kind: str  # "base", "copy", "split"
    U: frozenset[int] = frozenset()
    O: frozenset[int] = frozenset()
    children: tuple["CertNode", ...] = ()


def replay_certificate(node: CertNode | None, levels: SequenceLevels) -> frozenset[int]:
    """Rebuild the solution recorded in a certificate tree."""
    if node is None:
        return frozenset()
    if node.kind == "base":
        (lab,) = node.H
        return levels[node.level].parts[lab]
    if node.kind == "copy":
        return replay_certificate(node.children[0], levels)
    out = node.U - node.S
    for c in node.children:
        out |= replay_certificate(c, levels)
    return out


def _compositions(m: int, c: int) -> int:
    """Ways to write ``m`` as an ordered sum of ``c`` non-negative integers."""
    if c == 0:
        return 1 if m == 0 else 0
    return comb(m + c - 1, c - 1)


def _rank(vs: frozenset[int]):
    return (-len(vs), tuple(sorted(vs)))


class SigmaSolver:
    """Evaluates the table for one graph, sequence and sigma.

    Entries sharing ``(i, H, S)`` are filled together: one pass over the
    separators yields the best set for every reachable ``eta`` at once.
    ``self.memo[i][(H, S)]`` maps ``eta`` to ``(I, branch)``; a missing ``eta``
    means no valid set exists for it.
    """

    def __init__(self, g: Graph, seq: ContractionSequence, spec: SigmaSpec, t: int | None = None, check_keys=False):
        if g.n == 0:
            raise EmptyGraph("sigma solver on the empty graph")
        if spec.alpha > g.n:
            raise InvalidInstance(f"sigma contains {spec.alpha} > n = {g.n}")
        if t is None:
            t = verify_witness(g, seq).witnessed
        self.g = g
        self.spec = spec
        self.alpha = spec.alpha
        self.levels = SequenceLevels(g, seq)
        self.n = g.n
        self.t = t
        self.check_keys = check_keys
        self.memo: dict[int, dict] = {i: {} for i in range(1, g.n + 1)}
        self.stats = DPStats(g.n, t)
        self.sep_bound = 4 * self.n ** (4 * self.alpha)

    # -- table access -------------------------------------------------------
    def profile(self, i: int, H: frozenset[int], S: frozenset[int]) -> dict:
        key = (H, S)
        hit = self.memo[i].get(key)
        if hit is None:
            hit = self._compute(i, H, S)
            self.memo[i][key] = hit
            if self.check_keys:
                for eta, (vs, _) in hit.items():
                    if not self.entry_is_valid(i, H, S, eta, vs):
                        raise InternalValidityFailure(f"table entry at level {i} is not valid for its key")
        return hit

    def phi(self, i, H, S, eta) -> frozenset[int] | None:
        hit = self.profile(i, H, S).get(eta)
        return None if hit is None else hit[0]

    def _compute(self, i, H, S):
        if i == self.n:
            return {(): (frozenset(H), ("base",))} if 0 in self.spec.sigma else {}
        a, b, ps = self.levels.merge_at(i)
        lev = self.levels[i]
        if ps not in H:
            red, black = red_black_around(lev, H)
            if ps not in red or ps in black or not (S & lev.parts[ps]):
                sub = self.profile(i + 1, H, S)
                return {eta: (vs, ("copy",)) for eta, (vs, _) in sub.items()}
        return self._general(i, H, S, a, b, ps)

    def _general(self, i, H, S, a, b, ps):
        g, alpha = self.g, self.alpha
        lev1 = self.levels[i + 1]
        in_h = ps in H
        hrest = H - {ps} if in_h else H
        pstar = lev1.parts[a] | lev1.parts[b]
        fixed = None if in_h else S & pstar

        def vertex_ok(v):
            return len(g.adj[v] & S) <= alpha

        out: dict = {}
        count = 0
        for sep in enumerate_sigma_separators(
            g,
            lev1.parts,
            lev1.black,
            a,
            b,
            lev1.black[a] & hrest,
            lev1.black[b] & hrest,
            alpha,
            pstar_fixed=fixed,
            vertex_ok=vertex_ok,
        ):
            count += 1
            O, U = sep.O, sep.U
            if in_h and a in O and b in O and not (U & pstar):
                continue  # P* would have no solution vertex
            for eta, vs, keys in self._combine(i, S, hrest | {a, b}, O, U):
                old = out.get(eta)
                if old is None or _rank(vs) < _rank(old[0]):
                    out[eta] = (vs, ("split", O, U, keys))
        self.stats.note_separators(count, self.sep_bound)
        return out

    def _combine(self, i, S, F, O, U):
        """Yield ``(eta, I, sub-keys)`` for every profile reachable with this separator."""
        g, alpha, sigma = self.g, self.alpha, self.spec.sigma
        lev1 = self.levels[i + 1]
        new = U - S
        D = S | U
        cap: dict[int, int] = {}
        for v in D:
            d = len(g.adj[v] & new) if v in S else len(g.adj[v] & D)
            c = alpha - d if v in S else max((s - d for s in sigma if s >= d), default=-1)
            if c < 0:
                return
            cap[v] = c
        comps = split_components(lev1, F, O)
        self.stats.note_components(len(comps))
        subs = []
        for comp in comps:
            red, black = red_black_around(lev1, comp)
            sj = []
            for v in D:
                x = lev1.part_of[v]
                if x in black:
                    return  # a fixed vertex would see the component blackly
                if x in red:
                    sj.append(v)
            sj.sort()
            per_part: dict[int, int] = {}
            for v in sj:
                x = lev1.part_of[v]
                per_part[x] = per_part.get(x, 0) + 1
                if per_part[x] > alpha:
                    return
            subs.append((comp, frozenset(sj), tuple(sj)))
        order = sorted({v for _, _, sj in subs for v in sj})
        pos = {v: k for k, v in enumerate(order)}
        for v in new:
            if v not in pos and len(g.adj[v] & D) not in sigma:
                return
        self._count_functions(S, new, D, subs, cap, len(comps))
        # knapsack over components; state = accumulated counts per boundary vertex
        states = {tuple([0] * len(order)): (frozenset(), ())}
        for comp, sub_s, sj in subs:
            prof = self.profile(i + 1, comp, sub_s)
            if not prof:
                return
            nxt: dict[tuple, tuple] = {}
            for st, (acc, keys) in states.items():
                for eta_j, (val, _) in prof.items():
                    ns = list(st)
                    good = True
                    for v, x in eta_j:
                        k = pos[v]
                        ns[k] += x
                        if ns[k] > cap[v]:
                            good = False
                            break
                    if not good:
                        continue
                    ns = tuple(ns)
                    cand = acc | val
                    old = nxt.get(ns)
                    if old is None or _rank(cand) < _rank(old[0]):
                        nxt[ns] = (cand, keys + ((comp, sub_s, eta_j),))
            states = nxt
            if not states:
                return
        s_sorted = sorted(S)
        for st, (acc, keys) in states.items():
            good = True
            for v in new:
                k = pos.get(v)
                if k is not None and st[k] + len(g.adj[v] & D) not in sigma:
                    good = False
                    break
            if not good:
                continue
            eta = tuple((v, (st[pos[v]] if v in pos else 0) + len(g.adj[v] & new)) for v in s_sorted)
            yield eta, acc | new, keys

    def _count_functions(self, S, new, D, subs, cap, k):
        """Largest number of component-count tuples over all eta, against its bound."""
        g, alpha, sigma = self.g, self.alpha, self.spec.sigma
        mult = {v: 0 for v in D}
        for _, _, sj in subs:
            for v in sj:
                mult[v] += 1
        total = 1
        for v in D:
            c = mult[v]
            if v in S:
                ways = max(_compositions(m, c) for m in range(cap[v] + 1))
            else:
                d = len(g.adj[v] & D)
                ways = sum(_compositions(s - d, c) for s in sigma if s >= d)
            total *= ways
        self.stats.max_functions = max(self.stats.max_functions, total)
        bound = (alpha + k) ** (alpha * alpha * (self.t + 4))
        if total > bound:
            raise BoundViolation(f"{total} count functions exceed {bound}")

    # -- checking -----------------------------------------------------------
    def entry_is_valid(self, i, H, S, eta, vs) -> bool:
        g, sigma = self.g, self.spec.sigma
        lev = self.levels[i]
        if not vs:
            return False
        if {lev.part_of[v] for v in vs} != set(H):
            return False
        ins = vs | S
        if any(len(g.adj[v] & ins) not in sigma for v in vs):
            return False
        if tuple(sorted(v for v, _ in eta)) != tuple(sorted(S)):
            return False
        return all(len(g.adj[v] & vs) == c for v, c in eta)

    # -- driver -------------------------------------------------------------
    def solve(self) -> SigmaResult:
        limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(limit, 20 * self.n + 1000))
        try:
            root_h = frozenset(self.levels[1].parts)
            val = self.phi(1, root_h, frozenset(), ())
        finally:
            sys.setrecursionlimit(limit)
        self.stats.finish_levels(self.memo, entries=len)
        self._check_key_bound()
        vs = val if val is not None else frozenset()
        if not is_sigma_set(self.g, self.spec, vs):
            raise InternalValidityFailure("returned set violates the sigma condition")
        cert = self.certificate(1, root_h, frozenset(), ()) if val is not None else None
        return SigmaResult(len(vs), tuple(sorted(vs)), cert, self.stats)

    def _check_key_bound(self):
        a, n, t = self.alpha, self.n, self.t
        bound = n ** ((a + 1) * t) * (a + 1) ** (a * t)
        worst = max(self.stats.keys_per_level.values(), default=0)
        if worst > bound:
            raise BoundViolation(f"{worst} keys at one level exceed {bound}")

    def certificate(self, i, H, S, eta) -> CertNode:
        val, branch = self.memo[i][(H, S)][eta]
        kind = branch[0]
        if kind == "base":
            return CertNode(i, H, S, eta, "base")
        if kind == "copy":
            return CertNode(i, H, S, eta, "copy", children=(self.certificate(i + 1, H, S, eta),))
        _, O, U, keys = branch
        kids = tuple(self.certificate(i + 1, *k) for k in keys)
        return CertNode(i, H, S, eta, "split", U=U, O=O, children=kids)


def solve_sigma(
    g: Graph, seq: ContractionSequence, spec: SigmaSpec, t: int | None = None, check_keys: bool = False
) -> SigmaResult:
    """Largest sigma-set of ``g`` computed along ``seq``.

    ``t`` is the cml value the sequence witnesses; it is computed when omitted.
    Ties between largest sets are broken towards lexicographically smaller
    candidates at each table entry, so the output is deterministic.
    """
    return SigmaSolver(g, seq, spec, t=t, check_keys=check_keys).solve()
