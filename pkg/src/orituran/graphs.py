"""Oriented graphs as immutable bitset-adjacency values.

An oriented graph here is a loopless digraph with no antiparallel arc pair:
for any two vertices u, v at most one of u->v, v->u is present.  Vertices are
0..n-1 with n <= 64 so a neighbourhood fits in one Python int used as a bitset.

Text format (.og):
    line 1: n
    one line "u v" per arc u->v, 0-indexed
    '#' starts a comment line, blank lines are ignored
encode() emits arcs sorted by (u, v) with a trailing newline, so equal graphs
encode byte-identically.  An undirected host (for orientation sweeps) uses the
same format with a literal "undirected" line before n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

MAX_VERTICES = 64


class GraphError(ValueError):
    """Base for structural errors in this package."""


class LoopArcError(GraphError):
    """An arc u->u was supplied."""


class AntiparallelArcError(GraphError):
    """Both u->v and v->u were supplied."""


class InvariantError(GraphError):
    """Input violates a structural invariant (vertex cap, range, ...)."""


class TooLargeError(GraphError):
    """Instance exceeds a documented size cap."""


class ParseError(GraphError):
    """Malformed .og text. Carries 1-based line and column."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, col {column}: {message}")
        self.line = line
        self.column = column


def _check_vertex_count(n: int) -> None:
    if n < 0:
        raise InvariantError(f"vertex count {n} is negative")
    if n > MAX_VERTICES:
        raise InvariantError(f"vertex count {n} exceeds cap {MAX_VERTICES}")


@dataclass(frozen=True)
class OrientedGraph:
    """Immutable oriented graph; out[u] is the bitset of heads of arcs u->v."""

    n: int
    out: tuple[int, ...]

    def __post_init__(self):
        _check_vertex_count(self.n)
        if len(self.out) != self.n:
            raise InvariantError("out-mask tuple length does not match n")
        full = (1 << self.n) - 1
        for u, mask in enumerate(self.out):
            if mask & ~full:
                raise InvariantError(f"out-mask of {u} references vertices >= n")
            if mask >> u & 1:
                raise LoopArcError(f"loop at vertex {u}")
        for u, mask in enumerate(self.out):
            m = mask
            while m:
                v = (m & -m).bit_length() - 1
                if self.out[v] >> u & 1:
                    raise AntiparallelArcError(f"antiparallel pair between {u} and {v}")
                m &= m - 1

    @staticmethod
    def from_arcs(n: int, arcs: Iterable[tuple[int, int]]) -> "OrientedGraph":
        _check_vertex_count(n)
        out = [0] * n
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise InvariantError(f"arc ({u},{v}) out of range for n={n}")
            out[u] |= 1 << v
        return OrientedGraph(n, tuple(out))

    @staticmethod
    def empty(n: int) -> "OrientedGraph":
        _check_vertex_count(n)
        return OrientedGraph(n, (0,) * n)

    @cached_property
    def in_masks(self) -> tuple[int, ...]:
        ins = [0] * self.n
        for u, mask in enumerate(self.out):
            m = mask
            while m:
                v = (m & -m).bit_length() - 1
                ins[v] |= 1 << u
                m &= m - 1
        return tuple(ins)

    @cached_property
    def arc_count(self) -> int:
        return sum(mask.bit_count() for mask in self.out)

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out[u] >> v & 1)

    def arcs(self) -> Iterator[tuple[int, int]]:
        """Arcs in (u, v) sorted order."""
        for u in range(self.n):
            m = self.out[u]
            while m:
                v = (m & -m).bit_length() - 1
                yield (u, v)
                m &= m - 1

    def add_arc(self, u: int, v: int) -> "OrientedGraph":
        """New graph with arc u->v added (validation via the constructor)."""
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise InvariantError(f"arc ({u},{v}) out of range for n={self.n}")
        out = list(self.out)
        out[u] |= 1 << v
        return OrientedGraph(self.n, tuple(out))

    def out_degree(self, u: int) -> int:
        return self.out[u].bit_count()

    def in_degree(self, u: int) -> int:
        return self.in_masks[u].bit_count()

    def reverse(self) -> "OrientedGraph":
        return OrientedGraph(self.n, self.in_masks)

    def induced(self, vertices: Sequence[int]) -> "OrientedGraph":
        """Induced subgraph; vertices are relabelled 0..k-1 in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        if len(index) != len(vertices):
            raise InvariantError("induced vertex list has duplicates")
        out = [0] * len(vertices)
        for i, v in enumerate(vertices):
            m = self.out[v]
            while m:
                w = (m & -m).bit_length() - 1
                if w in index:
                    out[i] |= 1 << index[w]
                m &= m - 1
        return OrientedGraph(len(vertices), tuple(out))


@dataclass(frozen=True)
class DegreeProfile:
    """Per-vertex in/out degrees plus the aggregate stats used by the pipeline."""

    in_degrees: tuple[int, ...]
    out_degrees: tuple[int, ...]

    @property
    def totals(self) -> tuple[int, ...]:
        return tuple(a + b for a, b in zip(self.in_degrees, self.out_degrees))

    @property
    def max_degree(self) -> int:
        return max(self.totals, default=0)

    @property
    def min_degree(self) -> int:
        return min(self.totals, default=0)

    @property
    def arc_count(self) -> int:
        return sum(self.out_degrees)

    @property
    def average_degree(self) -> float:
        # d(D) = 2|E| / n; 0.0 on the empty vertex set
        n = len(self.in_degrees)
        return (2 * self.arc_count / n) if n else 0.0


def degree_profile(g: OrientedGraph) -> DegreeProfile:
    return DegreeProfile(
        in_degrees=tuple(m.bit_count() for m in g.in_masks),
        out_degrees=tuple(m.bit_count() for m in g.out),
    )


@dataclass(frozen=True)
class BipartiteDigraph:
    """Bipartite digraph with all arcs from part_u to part_w.

    Vertex ids are arbitrary distinct ints (they keep their identity through
    sub-instance extraction).  out_masks[i] is a bitset over part_w *indices*
    for part_u[i].
    """

    part_u: tuple[int, ...]
    part_w: tuple[int, ...]
    out_masks: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.part_u) | set(self.part_w)) != len(self.part_u) + len(self.part_w):
            raise InvariantError("parts overlap or contain duplicates")
        if len(self.out_masks) != len(self.part_u):
            raise InvariantError("out_masks length does not match part_u")
        full = (1 << len(self.part_w)) - 1
        for i, m in enumerate(self.out_masks):
            if m & ~full:
                raise InvariantError(f"out-mask {i} references indices outside part_w")

    @staticmethod
    def from_arcs(part_u: Sequence[int], part_w: Sequence[int],
                  arcs: Iterable[tuple[int, int]]) -> "BipartiteDigraph":
        u_index = {u: i for i, u in enumerate(part_u)}
        w_index = {w: j for j, w in enumerate(part_w)}
        masks = [0] * len(part_u)
        for u, w in arcs:
            if u not in u_index or w not in w_index:
                raise InvariantError(f"arc ({u},{w}) not from part_u to part_w")
            masks[u_index[u]] |= 1 << w_index[w]
        return BipartiteDigraph(tuple(part_u), tuple(part_w), tuple(masks))

    @cached_property
    def in_masks(self) -> tuple[int, ...]:
        """in_masks[j] = bitset over part_u indices with an arc into part_w[j]."""
        ins = [0] * len(self.part_w)
        for i, m in enumerate(self.out_masks):
            mm = m
            while mm:
                j = (mm & -mm).bit_length() - 1
                ins[j] |= 1 << i
                mm &= mm - 1
        return tuple(ins)

    @cached_property
    def arc_count(self) -> int:
        return sum(m.bit_count() for m in self.out_masks)

    @property
    def n(self) -> int:
        return len(self.part_u) + len(self.part_w)

    def arcs(self) -> Iterator[tuple[int, int]]:
        """Arcs as (u_id, w_id) pairs, sorted by part indices."""
        for i, u in enumerate(self.part_u):
            m = self.out_masks[i]
            while m:
                j = (m & -m).bit_length() - 1
                yield (u, self.part_w[j])
                m &= m - 1

    def out_neighbors(self, i: int) -> list[int]:
        """Ids of out-neighbours of part_u[i], ascending by part_w index."""
        res = []
        m = self.out_masks[i]
        while m:
            j = (m & -m).bit_length() - 1
            res.append(self.part_w[j])
            m &= m - 1
        return res

    def degree_of(self, side: str, idx: int) -> int:
        # in a one-directional bipartite digraph total degree = out for U, in for W
        if side == "u":
            return self.out_masks[idx].bit_count()
        return self.in_masks[idx].bit_count()

    def min_out_degree(self) -> int:
        return min((m.bit_count() for m in self.out_masks), default=0)

    def to_oriented(self) -> tuple[OrientedGraph, dict[int, int]]:
        """Compact to an OrientedGraph; returns (graph, id -> new-label map)."""
        ids = list(self.part_u) + list(self.part_w)
        if len(ids) > MAX_VERTICES:
            raise TooLargeError(f"{len(ids)} vertices exceed the {MAX_VERTICES}-vertex graph cap")
        label = {v: i for i, v in enumerate(ids)}
        g = OrientedGraph.from_arcs(len(ids), ((label[u], label[w]) for u, w in self.arcs()))
        return g, label

    def restrict(self, u_ids: Sequence[int], w_ids: Sequence[int]) -> "BipartiteDigraph":
        """Sub-instance on the given ids (arcs between them only)."""
        w_pos = {w: j for j, w in enumerate(self.part_w)}
        keep_w = [w_pos[w] for w in w_ids]
        u_pos = {u: i for i, u in enumerate(self.part_u)}
        masks = []
        for u in u_ids:
            old = self.out_masks[u_pos[u]]
            m = 0
            for new_j, old_j in enumerate(keep_w):
                if old >> old_j & 1:
                    m |= 1 << new_j
            masks.append(m)
        return BipartiteDigraph(tuple(u_ids), tuple(w_ids), tuple(masks))


# --- .og codec ---------------------------------------------------------------


def encode(g: OrientedGraph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.arcs())
    return "\n".join(lines) + "\n"


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, stripped


def _parse_arc_lines(lines: Iterator[tuple[int, str]], n: int) -> list[tuple[int, int]]:
    arcs = []
    for lineno, content in lines:
        parts = content.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'u v', got {content!r}", lineno)
        try:
            u = int(parts[0])
        except ValueError:
            raise ParseError(f"non-integer endpoint {parts[0]!r}", lineno) from None
        try:
            v = int(parts[1])
        except ValueError:
            raise ParseError(
                f"non-integer endpoint {parts[1]!r}", lineno, column=len(parts[0]) + 2
            ) from None
        if not (0 <= u < n):
            raise ParseError(f"vertex {u} out of range [0,{n})", lineno)
        if not (0 <= v < n):
            raise ParseError(f"vertex {v} out of range [0,{n})", lineno, column=len(parts[0]) + 2)
        arcs.append((u, v))
    return arcs


def decode(text: str) -> OrientedGraph:
    """Parse .og text. ParseError on malformed input, the structural errors
    (LoopArcError/AntiparallelArcError/InvariantError) on bad graphs."""
    lines = _content_lines(text)
    try:
        lineno, first = next(lines)
    except StopIteration:
        raise ParseError("empty input, expected vertex count", 1) from None
    try:
        n = int(first)
    except ValueError:
        raise ParseError(f"expected vertex count, got {first!r}", lineno) from None
    _check_vertex_count(n)
    return OrientedGraph.from_arcs(n, _parse_arc_lines(lines, n))


def encode_undirected(n: int, edges: Iterable[tuple[int, int]]) -> str:
    ordered = sorted((min(u, v), max(u, v)) for u, v in edges)
    lines = ["undirected", str(n)]
    lines.extend(f"{u} {v}" for u, v in ordered)
    return "\n".join(lines) + "\n"


def decode_undirected(text: str) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Parse an undirected host: returns (n, sorted deduplicated edges)."""
    lines = _content_lines(text)
    try:
        lineno, first = next(lines)
    except StopIteration:
        raise ParseError("empty input, expected 'undirected' header", 1) from None
    if first != "undirected":
        raise ParseError(f"expected 'undirected' header, got {first!r}", lineno)
    try:
        lineno, nline = next(lines)
    except StopIteration:
        raise ParseError("missing vertex count after 'undirected'", lineno + 1) from None
    try:
        n = int(nline)
    except ValueError:
        raise ParseError(f"expected vertex count, got {nline!r}", lineno) from None
    _check_vertex_count(n)
    edges = set()
    for u, v in _parse_arc_lines(lines, n):
        if u == v:
            raise LoopArcError(f"loop edge at vertex {u}")
        edges.add((min(u, v), max(u, v)))
    return n, tuple(sorted(edges))
