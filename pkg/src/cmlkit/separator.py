"""Balanced separators dominated by few vertices, read off a witness sequence.

A part with a black neighbour ``Q`` lies inside ``N(v)`` for any ``v`` in
``Q``, which is what makes the returned separators dominated.  Weights are
exact fractions throughout; an unweighted graph has unit weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .contraction import ContractionSequence, SequenceLevels, restrict_sequence, verify_witness
from .errors import InvalidWitness, PropertyCheckFailed
from .graph import Graph, connected_components, neighborhood_of_set


@dataclass(frozen=True)
class DominatedSeparator:
    S: frozenset[int]
    D: frozenset[int]
    label: str  # "heavy-part", "red-component" or "trivial"
    level: int = 0


def _exempt(g: Graph, comp) -> bool:
    # a vertex with no neighbour at all cannot be cut off by any dominated set
    return len(comp) == 1 and not g.adj[comp[0]]


def is_balanced(g: Graph, S, ratio: Fraction) -> bool:
    """Every component of ``g - S`` weighs at most ``ratio * w(g)``.

    Components made of a single isolated vertex of ``g`` are not counted,
    since no separator dominated by other vertices can contain them.
    """
    bound = ratio * g.total_weight()
    rest = set(range(g.n)) - set(S)
    return all(g.total_weight(c) <= bound for c in connected_components(g, rest) if not _exempt(g, c))


def _check_witness(g: Graph, seq: ContractionSequence, k: int) -> None:
    w = verify_witness(g, seq, edge_counts=False).witnessed
    if w > k:
        raise InvalidWitness(f"sequence witnesses cml {w} > k = {k}")


def _positive(g: Graph) -> None:
    for v in range(g.n):
        if g.weight(v) <= 0:
            raise ValueError(f"weight of vertex {v} is not positive")


def dominated_separator(g: Graph, seq: ContractionSequence, k: int, check_witness: bool = True) -> DominatedSeparator:
    """A ``(1 - 1/(2k+3))``-balanced separator inside ``N(D)`` with ``|D| <= k``.

    Scans ``P_n, ..., P_1`` for the first partition with a heavy part that has
    a black neighbour (separator: the part) or a heavy component of the parts
    without black neighbours (separator: its open neighbourhood).
    """
    if check_witness:
        _check_witness(g, seq, k)
    _positive(g)
    if g.n == 1:
        return DominatedSeparator(frozenset(), frozenset(), "trivial", 1)
    lam = Fraction(1, 2 * k + 3)
    W = g.total_weight()
    thr = lam * W
    levels = SequenceLevels(g, seq)
    out = None
    for i in range(g.n, 0, -1):
        out = _scan_level(g, levels[i], thr)
        if out is not None:
            break
    if out is None:
        raise PropertyCheckFailed("no partition has a heavy part or heavy red component")
    S, D, label = out
    res = DominatedSeparator(frozenset(S), frozenset(D), label, i)
    if not res.S <= _dominated(g, res.D):
        raise PropertyCheckFailed("separator is not inside N(D)")
    if len(res.D) > k:
        raise PropertyCheckFailed(f"{len(res.D)} dominators exceed k = {k}")
    if not is_balanced(g, res.S, 1 - lam):
        raise PropertyCheckFailed("separator is not (1 - 1/(2k+3))-balanced")
    return res


def _dominated(g: Graph, D) -> frozenset[int]:
    out: set[int] = set()
    for d in D:
        out |= g.adj[d]
    return frozenset(out)


def _black_dominator(level, lab) -> int:
    return min(min(level.parts[q]) for q in level.black[lab])


def _scan_level(g, level, thr):
    weight = {lab: g.total_weight(ms) for lab, ms in level.parts.items()}
    heavy = [lab for lab in level.parts if level.black[lab] and weight[lab] >= thr]
    if heavy:
        lab = min(heavy, key=lambda x: (-weight[x], x))
        return level.parts[lab], {_black_dominator(level, lab)}, "heavy-part"
    fully_red = {lab for lab in level.parts if not level.black[lab]}
    best = None
    seen: set[int] = set()
    for root in sorted(fully_red):
        if root in seen:
            continue
        comp = {root}
        stack = [root]
        seen.add(root)
        while stack:
            x = stack.pop()
            for y in level.red[x]:
                if y in fully_red and y not in seen:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        w = sum((weight[x] for x in comp), Fraction(0))
        if w >= thr and (best is None or w > best[0]):
            best = (w, comp)
    if best is None:
        return None
    comp = best[1]
    verts = set().union(*(level.parts[x] for x in comp))
    S = neighborhood_of_set(g, verts)
    nbr_parts = set().union(*(level.red[x] for x in comp)) - comp
    D = {_black_dominator(level, q) for q in nbr_parts}
    return S, D, "red-component"


@dataclass(frozen=True)
class BalancedSeparator:
    S: frozenset[int]
    D: frozenset[int]
    rounds: int


def balanced_separator(g: Graph, seq: ContractionSequence, k: int) -> BalancedSeparator:
    """A 2/3-balanced separator inside ``N(D)`` with ``|D| <= k(k+2)``.

    The heaviest remaining component is cut with ``dominated_separator`` on the
    induced sequence until it weighs at most two thirds of the total.
    """
    _check_witness(g, seq, k)
    _positive(g)
    W = g.total_weight()
    two_thirds = Fraction(2, 3) * W
    S: set[int] = set()
    D: set[int] = set()
    rounds = 0
    while True:
        comps = connected_components(g, set(range(g.n)) - S)
        if not comps:
            break
        heavy = max(comps, key=lambda c: (g.total_weight(c), -c[0]))
        if g.total_weight(heavy) <= two_thirds or _exempt(g, heavy):
            break
        rounds += 1
        if rounds > k + 2:
            raise PropertyCheckFailed(f"more than k+2 = {k + 2} rounds")
        sub, old = g.induced(heavy)
        sub_seq, _ = restrict_sequence(seq, heavy)
        part = dominated_separator(sub, sub_seq, k, check_witness=False)
        if not part.S:
            raise PropertyCheckFailed("empty separator for a heavy component")
        S |= {old[v] for v in part.S}
        D |= {old[v] for v in part.D}
    res = BalancedSeparator(frozenset(S), frozenset(D), rounds)
    if not res.S <= _dominated(g, res.D):
        raise PropertyCheckFailed("separator is not inside N(D)")
    if len(res.D) > k * (k + 2):
        raise PropertyCheckFailed(f"{len(res.D)} dominators exceed k(k+2) = {k * (k + 2)}")
    if not is_balanced(g, res.S, Fraction(2, 3)):
        raise PropertyCheckFailed("separator is not 2/3-balanced")
    return res
