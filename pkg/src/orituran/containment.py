"""Subdigraph containment: injective, arc-preserving (not induced).

A host contains a copy of a pattern when some injective vertex map sends every
pattern arc to a host arc in the same direction.  Extra host arcs between
image vertices are allowed.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from .canon import enumerate_tournaments
from .graphs import OrientedGraph, TooLargeError
from .homomorphism import VertexMap

MAX_ORIENTATION_EDGES = 24


def is_copy_witness(host: OrientedGraph, pattern: OrientedGraph, vm: VertexMap) -> bool:
    """Independent check that vm is a total injective arc-preserving map."""
    if vm.source_n != pattern.n or vm.target_n != host.n or not vm.is_total:
        return False
    m = vm.as_dict()
    images = set(m.values())
    if len(images) != pattern.n:
        return False
    if any(not (0 <= t < host.n) for t in images):
        return False
    return all(host.has_arc(m[u], m[v]) for u, v in pattern.arcs())


def _search(
    host: OrientedGraph, pattern: OrientedGraph, pinned: Optional[tuple[int, int]]
) -> Optional[dict[int, int]]:
    """Backtracking copy search; pinned = (pattern vertex, host vertex) if any."""
    order = sorted(
        range(pattern.n),
        key=lambda u: (
            -(pattern.out[u].bit_count() + pattern.in_masks[u].bit_count()),
            u,
        ),
    )
    if pinned is not None:
        # branch on the pinned vertex first so the constraint prunes everything
        order.remove(pinned[0])
        order.insert(0, pinned[0])
    position = {u: i for i, u in enumerate(order)}
    full = (1 << host.n) - 1
    cand0 = []
    for u in range(pattern.n):
        od, idg = pattern.out[u].bit_count(), pattern.in_masks[u].bit_count()
        m = 0
        for v in range(host.n):
            if host.out[v].bit_count() >= od and host.in_masks[v].bit_count() >= idg:
                m |= 1 << v
        cand0.append(m if m else 0)
    if pinned is not None:
        cand0[pinned[0]] &= 1 << pinned[1]
    if any(c == 0 for c in cand0):
        return None

    assignment: dict[int, int] = {}

    def dfs(i: int, cands: list[int], used: int) -> bool:
        if i == len(order):
            return True
        u = order[i]
        m = cands[u] & ~used
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            new = list(cands)
            ok = True
            succ = pattern.out[u]
            while succ and ok:
                x = (succ & -succ).bit_length() - 1
                succ &= succ - 1
                if position[x] > i:
                    new[x] &= host.out[v]
                    ok = (new[x] & ~(used | (1 << v))) != 0
            pred = pattern.in_masks[u]
            while pred and ok:
                x = (pred & -pred).bit_length() - 1
                pred &= pred - 1
                if position[x] > i:
                    new[x] &= host.in_masks[v]
                    ok = (new[x] & ~(used | (1 << v))) != 0
            if ok:
                assignment[u] = v
                if dfs(i + 1, new, used | (1 << v)):
                    return True
                del assignment[u]
        return False

    if dfs(0, cand0, 0):
        return dict(assignment)
    return None


def contains_copy(host: OrientedGraph, pattern: OrientedGraph) -> Optional[VertexMap]:
    """A copy of pattern in host as a VertexMap, or None."""
    if pattern.n > host.n or pattern.arc_count > host.arc_count:
        return None
    if pattern.n == 0:
        return VertexMap.of(0, host.n, {})
    found = _search(host, pattern, None)
    if found is None:
        return None
    return VertexMap.of(pattern.n, host.n, found)


def contains_copy_through(
    host: OrientedGraph, pattern: OrientedGraph, through: int
) -> Optional[VertexMap]:
    """A copy whose image includes the host vertex `through`, or None.

    When a host known to be pattern-free grows by one vertex, only copies
    through the new vertex can appear, so this is the incremental check.
    """
    if pattern.n > host.n or pattern.arc_count > host.arc_count:
        return None
    if not 0 <= through < host.n:
        raise ValueError(f"vertex {through} out of range")
    if pattern.n == 0:
        return None
    for p in range(pattern.n):
        found = _search(host, pattern, (p, through))
        if found is not None:
            return VertexMap.of(pattern.n, host.n, found)
    return None


def is_free(host: OrientedGraph, pattern: OrientedGraph) -> bool:
    return contains_copy(host, pattern) is None


def _tournament_misses(args: tuple[OrientedGraph, OrientedGraph]) -> bool:
    t, pattern = args
    return contains_copy(t, pattern) is None


def all_tournaments_contain(
    k: int, pattern: OrientedGraph, jobs: int = 1
) -> tuple[bool, Optional[OrientedGraph]]:
    """Whether every k-vertex tournament contains the pattern.

    Returns (True, None) or (False, first counterexample in enumeration
    order).  The answer is independent of jobs.
    """
    if jobs <= 1:
        for t in enumerate_tournaments(k):
            if contains_copy(t, pattern) is None:
                return False, t
        return True, None
    ts = list(enumerate_tournaments(k))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        misses = list(pool.map(_tournament_misses, ((t, pattern) for t in ts), chunksize=16))
    for t, miss in zip(ts, misses):
        if miss:
            return False, t
    return True, None


def orientation_graph(n: int, edges: Sequence[tuple[int, int]], bits: int) -> OrientedGraph:
    """Orient each undirected edge (u, v): bit 0 keeps u->v, bit 1 flips it."""
    out = [0] * n
    for i, (u, v) in enumerate(edges):
        if (bits >> i) & 1:
            out[v] |= 1 << u
        else:
            out[u] |= 1 << v
    return OrientedGraph(n, tuple(out))


def all_orientations_contain(
    n: int, edges: Sequence[tuple[int, int]], pattern: OrientedGraph
) -> tuple[bool, Optional[OrientedGraph]]:
    """Whether every orientation of the given undirected graph contains pattern.

    Sweeps the 2^|edges| orientations in Gray-code order, flipping one arc per
    step.  Returns (False, counterexample) at the first miss; the miss reported
    is the one of lowest Gray index, so the result is deterministic.
    """
    edges = [tuple(e) for e in edges]
    if len(set(frozenset(e) for e in edges)) != len(edges):
        raise ValueError("duplicate undirected edges")
    if any(u == v for u, v in edges):
        raise ValueError("loops cannot be oriented")
    m = len(edges)
    if m > MAX_ORIENTATION_EDGES:
        raise TooLargeError(
            f"{m} edges exceeds the 2^{MAX_ORIENTATION_EDGES} orientation sweep cap"
        )
    out = [0] * n
    for u, v in edges:
        out[u] |= 1 << v
    g = OrientedGraph(n, tuple(out))
    if contains_copy(g, pattern) is None:
        return False, g
    for i in range(1, 1 << m):
        b = (i & -i).bit_length() - 1
        u, v = edges[b]
        if (out[u] >> v) & 1:
            out[u] &= ~(1 << v)
            out[v] |= 1 << u
        else:
            out[v] &= ~(1 << u)
            out[u] |= 1 << v
        g = OrientedGraph(n, tuple(out))
        if contains_copy(g, pattern) is None:
            return False, g
    return True, None
