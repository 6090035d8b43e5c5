"""Text formats: DIMACS graphs, ``cseq`` sequences, and pairs/order/partition files.

Graph files follow the DIMACS edge format with 1-indexed ids::

    c optional comment
    p edge <n> <m>
    n <v> <p/q>        (optional vertex weight)
    e <u> <v>

Writers emit comments first, then the problem line, weights by vertex, and
edges sorted by endpoints.  Reading a written file and writing it again
reproduces the same bytes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .contraction import ContractionSequence, OrderedGraph
from .errors import ParseError
from .graph import Graph, Partition


@dataclass
class GraphFile:
    graph: Graph
    comments: list[str] = field(default_factory=list)


@dataclass
class SequenceFile:
    seq: ContractionSequence
    comments: list[str] = field(default_factory=list)


def _fraction(tok: str, where: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{where}: bad weight {tok!r}") from exc


def _int(tok: str, where: str) -> int:
    try:
        return int(tok)
    except ValueError as exc:
        raise ParseError(f"{where}: expected an integer, got {tok!r}") from exc


def parse_dimacs(text: str) -> GraphFile:
    comments: list[str] = []
    n = m = None
    edges = []
    weights: dict[int, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        where = f"line {lineno}"
        if not line:
            continue
        tag, *rest = line.split()
        if tag == "c":
            comments.append(line[2:] if line.startswith("c ") else "")
        elif tag == "p":
            if n is not None:
                raise ParseError(f"{where}: second problem line")
            if len(rest) != 3 or rest[0] != "edge":
                raise ParseError(f"{where}: expected 'p edge <n> <m>'")
            n, m = _int(rest[1], where), _int(rest[2], where)
            if n < 0 or m < 0:
                raise ParseError(f"{where}: negative size")
        elif tag in ("e", "n"):
            if n is None:
                raise ParseError(f"{where}: '{tag}' line before the problem line")
            if len(rest) != 2:
                raise ParseError(f"{where}: expected two fields after '{tag}'")
            u = _int(rest[0], where)
            if not 1 <= u <= n:
                raise ParseError(f"{where}: vertex {u} out of range 1..{n}")
            if tag == "n":
                w = _fraction(rest[1], where)
                if w <= 0:
                    raise ParseError(f"{where}: weight must be positive")
                weights[u - 1] = w
                continue
            v = _int(rest[1], where)
            if not 1 <= v <= n:
                raise ParseError(f"{where}: vertex {v} out of range 1..{n}")
            if u == v:
                raise ParseError(f"{where}: self-loop at {u}")
            edges.append((u - 1, v - 1))
        else:
            raise ParseError(f"{where}: unknown line type {tag!r}")
    if n is None:
        raise ParseError("missing 'p edge' line")
    if len({(min(e), max(e)) for e in edges}) != len(edges):
        raise ParseError("duplicate edge")
    if len(edges) != m:
        raise ParseError(f"problem line announces {m} edges, found {len(edges)}")
    ws = None
    if weights:
        ws = [weights.get(v, Fraction(1)) for v in range(n)]
    return GraphFile(Graph(n, edges, ws), comments)


def format_dimacs(g: Graph, comments=()) -> str:
    out = [f"c {c}" if c else "c" for c in comments]
    out.append(f"p edge {g.n} {g.m}")
    if g.weights is not None:
        for v in range(g.n):
            w = Fraction(g.weights[v])
            out.append(f"n {v + 1} {w.numerator}/{w.denominator}")
    out.extend(f"e {u + 1} {v + 1}" for u, v in g.sorted_edges())
    return "\n".join(out) + "\n"


def parse_cseq(text: str) -> SequenceFile:
    """``cseq 1 <n>`` header, then ``<a> <b>`` merges; ``#`` lines are comments.

    The merge count and labels are not checked here; ``ContractionSequence.check``
    reports the first bad merge.
    """
    comments: list[str] = []
    n = None
    merges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        where = f"line {lineno}"
        if not line:
            continue
        if line.startswith("#"):
            comments.append(line[1:].strip())
            continue
        toks = line.split()
        if n is None:
            if len(toks) != 3 or toks[0] != "cseq" or toks[1] != "1":
                raise ParseError(f"{where}: expected 'cseq 1 <n>'")
            n = _int(toks[2], where)
            if n < 1:
                raise ParseError(f"{where}: n must be positive")
            continue
        if len(toks) != 2:
            raise ParseError(f"{where}: expected '<a> <b>'")
        merges.append((_int(toks[0], where), _int(toks[1], where)))
    if n is None:
        raise ParseError("missing 'cseq 1 <n>' header")
    return SequenceFile(ContractionSequence(n, merges), comments)


def format_cseq(seq: ContractionSequence, comments=()) -> str:
    out = [f"# {c}" if c else "#" for c in comments]
    out.append(f"cseq 1 {seq.n}")
    out.extend(f"{a} {b}" for a, b in seq.merges)
    return "\n".join(out) + "\n"


def _data_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_pairs(text: str, n: int) -> list[tuple[int, int]]:
    pairs = []
    for lineno, toks in _data_lines(text):
        if len(toks) != 2:
            raise ParseError(f"line {lineno}: expected two ids")
        u, v = (_int(t, f"line {lineno}") for t in toks)
        for x in (u, v):
            if not 1 <= x <= n:
                raise ParseError(f"line {lineno}: vertex {x} out of range 1..{n}")
        pairs.append((u - 1, v - 1))
    return pairs


def format_pairs(pairs) -> str:
    return "".join(f"{u + 1} {v + 1}\n" for u, v in pairs)


def parse_order(text: str, g: Graph) -> OrderedGraph:
    """Line ``k`` names the vertex at position ``k``."""
    seq = []
    for lineno, toks in _data_lines(text):
        if len(toks) != 1:
            raise ParseError(f"line {lineno}: expected one id")
        seq.append(_int(toks[0], f"line {lineno}") - 1)
    if sorted(seq) != list(range(g.n)):
        raise ParseError("order is not a permutation of the vertices")
    pos = [0] * g.n
    for k, v in enumerate(seq, 1):
        pos[v] = k
    return OrderedGraph(g, tuple(pos))


def format_order(og: OrderedGraph) -> str:
    by_pos = sorted(range(og.graph.n), key=lambda v: og.order[v])
    return "".join(f"{v + 1}\n" for v in by_pos)


def parse_partition(text: str, n: int) -> Partition:
    parts = []
    for lineno, toks in _data_lines(text):
        parts.append([_int(t, f"line {lineno}") - 1 for t in toks])
    flat = sorted(v for p in parts for v in p)
    if flat != list(range(n)):
        raise ParseError("parts do not partition the vertices")
    return Partition.from_parts(n, parts)


def format_partition(p: Partition) -> str:
    rows = sorted(p.by_label().items())
    return "".join(" ".join(str(v + 1) for v in sorted(ms)) + "\n" for _, ms in rows)


def parse_weights(text: str, n: int) -> list[Fraction]:
    """Lines ``<v> <p/q>``; vertices not listed weigh 1."""
    ws = [Fraction(1)] * n
    for lineno, toks in _data_lines(text):
        where = f"line {lineno}"
        if len(toks) != 2:
            raise ParseError(f"{where}: expected '<v> <weight>'")
        v = _int(toks[0], where)
        if not 1 <= v <= n:
            raise ParseError(f"{where}: vertex {v} out of range 1..{n}")
        w = _fraction(toks[1], where)
        if w <= 0:
            raise ParseError(f"{where}: weight must be positive")
        ws[v - 1] = w
    return ws


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def load_graph(path) -> Graph:
    return parse_dimacs(read_text(path)).graph


def load_sequence(path) -> ContractionSequence:
    return parse_cseq(read_text(path)).seq
