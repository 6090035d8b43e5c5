"""Shared plumbing for the two dynamic programs over a contraction sequence."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .contraction import LevelData
from .errors import BlackEdgeInComponent, BoundViolation


def red_black_around(level: LevelData, parts: Iterable[int]) -> tuple[frozenset[int], frozenset[int]]:
    """Red and black neighbours of a part set (both exclude the set itself)."""
    ps = frozenset(parts)
    red: set[int] = set()
    black: set[int] = set()
    for x in ps:
        red |= level.red[x]
        black |= level.black[x]
    return frozenset(red - ps), frozenset(black - ps)


def split_components(level: LevelData, F: Iterable[int], O: Iterable[int]) -> list[frozenset[int]]:
    """Connected components of the quotient restricted to ``F - O``.

    Components are sorted by their minimum label.  Raises BlackEdgeInComponent
    if a component contains a black edge.
    """
    rest = set(F) - set(O)
    comps = []
    while rest:
        root = min(rest)
        rest.discard(root)
        comp = {root}
        stack = [root]
        while stack:
            x = stack.pop()
            for y in level.red[x] | level.black[x]:
                if y in rest:
                    rest.discard(y)
                    comp.add(y)
                    stack.append(y)
        for x in comp:
            if level.black[x] & comp:
                raise BlackEdgeInComponent(f"black edge inside component at level {level.i}")
        comps.append(frozenset(comp))
    comps.sort(key=min)
    return comps


@dataclass
class DPStats:
    """Counters compared against the polynomial bounds during a run."""

    n: int
    t: int
    keys_per_level: dict[int, int] = field(default_factory=dict)
    subgraphs_per_level: dict[int, int] = field(default_factory=dict)
    max_separators: int = 0
    separator_bound: int = 0
    max_components: int = 0
    max_functions: int = 0
    function_bound_hits: int = 0
    separator_contexts: int = 0

    @property
    def component_bound(self) -> int:
        return self.t + 2

    def note_separators(self, count: int, bound: int) -> None:
        self.separator_contexts += 1
        self.max_separators = max(self.max_separators, count)
        self.separator_bound = bound
        if count > bound:
            raise BoundViolation(f"{count} separators exceed the bound {bound}")

    def note_components(self, k: int) -> None:
        self.max_components = max(self.max_components, k)
        if k > self.t + 2:
            raise BoundViolation(f"{k} components exceed t+2 = {self.t + 2}")

    def finish_levels(self, memo: dict[int, dict], entries=None) -> None:
        """Record table sizes; ``entries(value)`` counts keys folded into one slot."""
        for i, table in memo.items():
            if entries is None:
                self.keys_per_level[i] = len(table)
            else:
                self.keys_per_level[i] = sum(entries(v) for v in table.values())
            self.subgraphs_per_level[i] = len({key[0] for key in table})
        for i, c in self.subgraphs_per_level.items():
            if c > self.n**self.t:
                raise BoundViolation(f"{c} subgraphs at level {i} exceed n^t = {self.n**self.t}")

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "t": self.t,
            "max_keys_per_level": max(self.keys_per_level.values(), default=0),
            "total_keys": sum(self.keys_per_level.values()),
            "max_subgraphs_per_level": max(self.subgraphs_per_level.values(), default=0),
            "max_separators": self.max_separators,
            "separator_bound": self.separator_bound,
            "max_components": self.max_components,
            "max_functions": self.max_functions,
        }
