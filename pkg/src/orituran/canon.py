"""Canonical labelling, isomorphism, and isomorph-free enumeration.

The canonical code of an n-vertex oriented graph is the lexicographically
smallest string, over all relabelings, of upper-triangle digits in row-major
pair order (0,1),(0,2),...,(0,n-1),(1,2),...: digit 0 = no arc, 1 = arc i->j,
2 = arc j->i.  Serialized as "n:digits".

Codes are found by an exact branch-and-bound over vertex placements: a partial
placement determines the digits of all pairs among placed vertices, undetermined
positions are zeros, and zeros minorize every completion, so a partial string
that is already >= the best known full code can be cut.

Enumeration extends canonical (k-1)-vertex representatives by one vertex.  A
child is kept iff the new vertex is a canonical-deletion vertex: some
minimum-code labelling of the child puts it in the last position.  Children of
one parent that pass are deduplicated by code (two extension patterns can be
automorphic images of each other).  Every class is then produced exactly once:
deleting a last-position vertex of a minimal labelling determines the parent
class, so no class arises under two parents.  The simpler rule "keep iff the
child is its own canonical form" is NOT exact for this code order (restriction
of a canonical labelling is not always canonical; first failures at n = 5).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from .graphs import InvariantError, OrientedGraph, TooLargeError

MAX_CODE_VERTICES = 10
MAX_ENUM_VERTICES = 7

_PAIR_POS: dict[int, list[list[int]]] = {}
_DEPTH_POS: dict[int, list[list[int]]] = {}


def _tables(n: int) -> tuple[list[list[int]], list[list[int]]]:
    if n not in _PAIR_POS:
        pos = [[0] * n for _ in range(n)]
        p = 0
        for i in range(n):
            for j in range(i + 1, n):
                pos[i][j] = p
                p += 1
        _PAIR_POS[n] = pos
        # positions newly determined when vertex k is placed: pairs (i,k), i<k
        _DEPTH_POS[n] = [[pos[i][k] for i in range(k)] for k in range(n)]
    return _PAIR_POS[n], _DEPTH_POS[n]


def _identity_digits(out: tuple[int, ...], n: int) -> bytearray:
    d = bytearray(n * (n - 1) // 2)
    p = 0
    for i in range(n):
        oi = out[i]
        for j in range(i + 1, n):
            if oi >> j & 1:
                d[p] = 1
            elif out[j] >> i & 1:
                d[p] = 2
            p += 1
    return d


def _min_search(out: tuple[int, ...], n: int, best: bytearray, stop_early: bool) -> bool:
    """Lower best in place to the minimum code; True iff something beat the seed.

    stop_early returns at the first improvement (enough for canonicity tests).
    """
    _, depth_pos = _tables(n)
    cur = bytearray(len(best))
    placed: list[int] = []
    improved = False

    def dfs(k: int, used: int) -> None:
        nonlocal improved
        if k == n:
            if cur < best:
                best[:] = cur
                improved = True
            return
        cands = []
        for v in range(n):
            if used >> v & 1:
                continue
            ov = out[v]
            digs = bytes(
                1 if (out[a] >> v) & 1 else (2 if (ov >> a) & 1 else 0) for a in placed
            )
            cands.append((digs, v))
        cands.sort()
        positions = depth_pos[k]
        for digs, v in cands:
            for p, d in zip(positions, digs):
                cur[p] = d
            # zeros at undetermined positions minorize every completion
            if cur < best:
                placed.append(v)
                dfs(k + 1, used | (1 << v))
                placed.pop()
            for p in positions:
                cur[p] = 0
            if improved and stop_early:
                return

    dfs(0, 0)
    return improved


def _min_digits(out: tuple[int, ...], n: int) -> bytes:
    best = _identity_digits(out, n)
    _min_search(out, n, best, stop_early=False)
    return bytes(best)


def _is_canonical_masks(out: tuple[int, ...], n: int) -> bool:
    best = _identity_digits(out, n)
    return not _min_search(out, n, best, stop_early=True)


def _min_search_pinned(out: tuple[int, ...], n: int, best: bytearray) -> None:
    """Lower best in place to the min code over labelings fixing vertex n-1 last.

    Placing position i also determines the pair (i, n-1), since the last
    position is pre-assigned.
    """
    pos, _ = _tables(n)
    last = n - 1
    depth_pos = [[pos[i2][i] for i2 in range(i)] + [pos[i][last]] for i in range(last)]
    cur = bytearray(len(best))
    placed: list[int] = []
    o_last = out[last]

    def dfs(k: int, used: int) -> None:
        if k == last:
            if cur < best:
                best[:] = cur
            return
        cands = []
        for v in range(last):
            if used >> v & 1:
                continue
            ov = out[v]
            digs = bytes(
                [1 if (out[a] >> v) & 1 else (2 if (ov >> a) & 1 else 0) for a in placed]
                + [1 if (ov >> last) & 1 else (2 if (o_last >> v) & 1 else 0)]
            )
            cands.append((digs, v))
        cands.sort()
        positions = depth_pos[k]
        for digs, v in cands:
            for p, d in zip(positions, digs):
                cur[p] = d
            if cur < best:
                placed.append(v)
                dfs(k + 1, used | (1 << v))
                placed.pop()
            for p in positions:
                cur[p] = 0

    dfs(0, 0)


def accept_child(out: tuple[int, ...], n: int) -> Optional[bytes]:
    """Canonical-deletion acceptance for a child whose new vertex is n-1.

    Returns the child's canonical digits when the new vertex can occupy the
    last position of a minimum-code labelling, else None.
    """
    best = _identity_digits(out, n)
    _min_search_pinned(out, n, best)
    probe = bytearray(best)
    if _min_search(out, n, probe, stop_early=True):
        return None
    return bytes(best)


def masks_from_digits(digits: bytes, n: int) -> tuple[int, ...]:
    out = [0] * n
    p = 0
    for i in range(n):
        for j in range(i + 1, n):
            d = digits[p]
            p += 1
            if d == 1:
                out[i] |= 1 << j
            elif d == 2:
                out[j] |= 1 << i
    return tuple(out)


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Minimal row-major ternary code; ordering is (n, digits) lexicographic."""

    n: int
    digits: str

    def serialize(self) -> str:
        return f"{self.n}:{self.digits}"

    @staticmethod
    def parse(text: str) -> "CanonicalCode":
        head, sep, digits = text.partition(":")
        if not sep:
            raise InvariantError(f"code {text!r} lacks the 'n:' prefix")
        try:
            n = int(head)
        except ValueError:
            raise InvariantError(f"bad vertex count in code {text!r}") from None
        code = CanonicalCode(n, digits)
        code.to_graph()  # validates length and digit alphabet
        return code

    def to_graph(self) -> OrientedGraph:
        if len(self.digits) != self.n * (self.n - 1) // 2:
            raise InvariantError(f"code digit count does not match n={self.n}")
        arcs = []
        p = 0
        for i in range(self.n):
            for j in range(i + 1, self.n):
                d = self.digits[p]
                p += 1
                if d == "1":
                    arcs.append((i, j))
                elif d == "2":
                    arcs.append((j, i))
                elif d != "0":
                    raise InvariantError(f"bad digit {d!r} in code")
        return OrientedGraph.from_arcs(self.n, arcs)


def canonical_code(g: OrientedGraph) -> CanonicalCode:
    """Exact canonical code; capped at n <= 10 (exhaustive search with pruning)."""
    if g.n > MAX_CODE_VERTICES:
        raise TooLargeError(f"canonical code capped at {MAX_CODE_VERTICES} vertices, got {g.n}")
    digits = _min_digits(g.out, g.n)
    return CanonicalCode(g.n, "".join(str(d) for d in digits))


def is_canonical(g: OrientedGraph) -> bool:
    """True iff g's own labelling already attains its canonical code."""
    if g.n > MAX_CODE_VERTICES:
        raise TooLargeError(f"canonical code capped at {MAX_CODE_VERTICES} vertices, got {g.n}")
    return _is_canonical_masks(g.out, g.n)


def is_isomorphic(a: OrientedGraph, b: OrientedGraph) -> bool:
    if a.n != b.n:
        return False
    if a.arc_count != b.arc_count:
        return False
    da = sorted((m.bit_count(), i.bit_count()) for m, i in zip(a.out, a.in_masks))
    db = sorted((m.bit_count(), i.bit_count()) for m, i in zip(b.out, b.in_masks))
    if da != db:
        return False
    return canonical_code(a) == canonical_code(b)


def automorphism_order(g: OrientedGraph) -> int:
    """|Aut(g)| by brute force; intended for the small cross-check sizes."""
    if g.n > 8:
        raise TooLargeError("automorphism order is brute force, capped at 8 vertices")
    n, out = g.n, g.out
    count = 0
    for perm in itertools.permutations(range(n)):
        if all(
            ((out[perm[u]] >> perm[v]) & 1) == ((out[u] >> v) & 1)
            for u in range(n)
            for v in range(n)
            if u != v
        ):
            count += 1
    return count


# --- isomorph-free generation -------------------------------------------------

_EXT_STATES: dict[tuple[int, bool], list[tuple[int, ...]]] = {}


def _ext_states(k: int, tournament: bool) -> list[tuple[int, ...]]:
    """Arc patterns from k old vertices to a new one; densest first.

    State per old vertex u: 0 none, 1 u->new, 2 new->u.
    """
    key = (k, tournament)
    if key not in _EXT_STATES:
        alphabet = (1, 2) if tournament else (0, 1, 2)
        states = list(itertools.product(alphabet, repeat=k))
        states.sort(key=lambda st: (st.count(0), st))
        _EXT_STATES[key] = states
    return _EXT_STATES[key]


def extend_masks(masks: tuple[int, ...], state: tuple[int, ...]) -> tuple[int, ...]:
    k = len(masks)
    new = list(masks) + [0]
    bit_k = 1 << k
    for u, s in enumerate(state):
        if s == 1:
            new[u] |= bit_k
        elif s == 2:
            new[k] |= 1 << u
    return tuple(new)


def canonical_children(
    masks: tuple[int, ...], k: int, tournament: bool = False
) -> Iterator[tuple[tuple[int, ...], bytes]]:
    """(canonical masks, digits) for each new class obtained by one extension.

    The parent must be a canonical representative on k vertices; children are
    deduplicated within the parent (automorphic extension patterns collide).
    """
    seen: set[bytes] = set()
    for state in _ext_states(k, tournament):
        child = extend_masks(masks, state)
        code = accept_child(child, k + 1)
        if code is None or code in seen:
            continue
        seen.add(code)
        yield masks_from_digits(code, k + 1), code


def enumerate_oriented_graphs(
    n: int, predicate: Optional[Callable[[OrientedGraph], bool]] = None
) -> Iterator[OrientedGraph]:
    """Stream one canonical representative per isomorphism class on n vertices.

    A predicate, when given, must be closed under taking subdigraphs (vertex
    and arc deletions); it is then applied at every intermediate order and
    prunes whole extension subtrees.
    """
    if n < 1:
        raise InvariantError("enumeration needs n >= 1")
    if n > MAX_ENUM_VERTICES:
        raise TooLargeError(f"enumeration capped at {MAX_ENUM_VERTICES} vertices, got {n}")

    def keep(masks: tuple[int, ...], k: int) -> bool:
        return predicate is None or predicate(OrientedGraph(k, masks))

    level: list[tuple[int, ...]] = [(0,)] if keep((0,), 1) else []
    for k in range(1, n):
        nxt = []
        for masks in level:
            for child, _code in canonical_children(masks, k):
                if keep(child, k + 1):
                    nxt.append(child)
        level = nxt
    for masks in level:
        yield OrientedGraph(n, masks)


_TOURNAMENT_CACHE: dict[int, list[OrientedGraph]] = {}


def enumerate_tournaments(k: int) -> list[OrientedGraph]:
    """All tournaments on k vertices up to isomorphism, canonical forms, cached."""
    if k < 1:
        raise InvariantError("tournament enumeration needs k >= 1")
    if k > MAX_ENUM_VERTICES:
        raise TooLargeError(f"tournament enumeration capped at {MAX_ENUM_VERTICES}, got {k}")
    if k in _TOURNAMENT_CACHE:
        return list(_TOURNAMENT_CACHE[k])
    _TOURNAMENT_CACHE.setdefault(1, [OrientedGraph(1, (0,))])
    level = [g.out for g in _TOURNAMENT_CACHE[max(m for m in _TOURNAMENT_CACHE if m <= k)]]
    start = max(m for m in _TOURNAMENT_CACHE if m <= k)
    for m in range(start, k):
        nxt = [child for masks in level for child, _ in canonical_children(masks, m, True)]
        level = nxt
        _TOURNAMENT_CACHE[m + 1] = [OrientedGraph(m + 1, masks) for masks in level]
    return list(_TOURNAMENT_CACHE[k])
