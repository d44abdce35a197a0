"""Exact oriented Turan numbers at small n, closed forms, and extremal constructions.

exo(n, F) is the largest arc count among n-vertex oriented graphs containing
no copy of F.  The oracle enumerates F-free graphs one isomorphism class at a
time (freeness survives vertex deletion, so pruning whole subtrees is sound)
with a branch-and-bound cutoff, and is seeded with a verified F-free
construction when one applies.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .canon import (
    MAX_CODE_VERTICES,
    CanonicalCode,
    _ext_states,
    accept_child,
    canonical_code,
    extend_masks,
    masks_from_digits,
)
from .containment import contains_copy_through, is_free
from .graphs import GraphError, InvariantError, OrientedGraph, TooLargeError
from .homomorphism import EmptyPatternError, compressibility

MAX_EXACT_VERTICES = 7

VALID_ALL = "all n"
VALID_LARGE = "sufficiently large n"


class BadParamsError(GraphError):
    """Construction or pattern parameters outside their valid range."""


class NoFormulaError(GraphError):
    """No closed form is available for this pattern."""


class BudgetExceededError(Exception):
    """Search stopped at the node budget; lower_bound is still certified."""

    def __init__(self, lower_bound: int, witness: Optional[OrientedGraph], nodes: int):
        super().__init__(
            f"node budget exhausted after {nodes} nodes; certified lower bound {lower_bound}"
        )
        self.lower_bound = lower_bound
        self.witness = witness
        self.nodes = nodes


@dataclass(frozen=True)
class PatternSpec:
    """A named forbidden pattern together with its concrete graph.

    kind is one of dpath, dcycle, ttour, star, matching, adpath, oc4, prop23,
    prop23m, p3plusarc, thm32, custom.  Tokens render as dpath3, star:1,2,
    oc4, ...; c3 is accepted as an alias for dcycle3.
    """

    kind: str
    params: tuple[int, ...]
    graph: OrientedGraph

    @property
    def token(self) -> str:
        if self.kind == "star":
            return f"star:{self.params[0]},{self.params[1]}"
        if self.params:
            return f"{self.kind}{self.params[0]}"
        return self.kind

    @staticmethod
    def directed_path(k: int) -> "PatternSpec":
        if k < 2:
            raise BadParamsError("a directed path needs at least 2 vertices")
        g = OrientedGraph.from_arcs(k, [(i, i + 1) for i in range(k - 1)])
        return PatternSpec("dpath", (k,), g)

    @staticmethod
    def directed_cycle(k: int) -> "PatternSpec":
        if k < 3:
            raise BadParamsError("a directed cycle needs at least 3 vertices")
        g = OrientedGraph.from_arcs(k, [(i, (i + 1) % k) for i in range(k)])
        return PatternSpec("dcycle", (k,), g)

    @staticmethod
    def transitive_tournament(k: int) -> "PatternSpec":
        if k < 2:
            raise BadParamsError("a transitive tournament pattern needs at least 2 vertices")
        g = OrientedGraph.from_arcs(k, [(i, j) for i in range(k) for j in range(i + 1, k)])
        return PatternSpec("ttour", (k,), g)

    @staticmethod
    def star(p: int, q: int) -> "PatternSpec":
        """Oriented star: center of in-degree p and out-degree q, p + q leaves."""
        if p < 0 or q < 0 or p + q < 1:
            raise BadParamsError("star needs p, q >= 0 with p + q >= 1")
        arcs = [(i, 0) for i in range(1, p + 1)]
        arcs += [(0, p + j) for j in range(1, q + 1)]
        return PatternSpec("star", (p, q), OrientedGraph.from_arcs(p + q + 1, arcs))

    @staticmethod
    def matching(k: int) -> "PatternSpec":
        if k < 1:
            raise BadParamsError("matching needs k >= 1")
        g = OrientedGraph.from_arcs(2 * k, [(2 * i, 2 * i + 1) for i in range(k)])
        return PatternSpec("matching", (k,), g)

    @staticmethod
    def antidirected_path(k: int) -> "PatternSpec":
        """Path on k vertices with alternating arcs, first arc forward."""
        if k < 2:
            raise BadParamsError("an antidirected path needs at least 2 vertices")
        arcs = [(i, i + 1) if i % 2 == 0 else (i + 1, i) for i in range(k - 1)]
        return PatternSpec("adpath", (k,), OrientedGraph.from_arcs(k, arcs))

    @staticmethod
    def oriented_c4() -> "PatternSpec":
        """Four-cycle oriented a->b, b->c, c->d, a->d."""
        g = OrientedGraph.from_arcs(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
        return PatternSpec("oc4", (), g)

    @staticmethod
    def prop23() -> "PatternSpec":
        """Four vertices, arcs a->b, b->c, d->c."""
        g = OrientedGraph.from_arcs(4, [(0, 1), (1, 2), (3, 2)])
        return PatternSpec("prop23", (), g)

    @staticmethod
    def prop23_mirror() -> "PatternSpec":
        """Arc-reversed twin of prop23: b->a, b->c, c->d."""
        g = OrientedGraph.from_arcs(4, [(1, 0), (1, 2), (2, 3)])
        return PatternSpec("prop23m", (), g)

    @staticmethod
    def p3_plus_arc() -> "PatternSpec":
        """Two arcs into a shared middle vertex plus one independent arc."""
        g = OrientedGraph.from_arcs(5, [(0, 1), (2, 1), (3, 4)])
        return PatternSpec("p3plusarc", (), g)

    @staticmethod
    def thm32() -> "PatternSpec":
        """Diamond x->y1, x->y2, y1->z, y2->z."""
        g = OrientedGraph.from_arcs(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
        return PatternSpec("thm32", (), g)

    @staticmethod
    def custom(graph: OrientedGraph) -> "PatternSpec":
        if graph.arc_count == 0:
            raise EmptyPatternError("a custom pattern needs at least one arc")
        return PatternSpec("custom", (), graph)

    @staticmethod
    def parse(token: str) -> "PatternSpec":
        t = token.strip().lower()
        fixed = {
            "oc4": PatternSpec.oriented_c4,
            "prop23": PatternSpec.prop23,
            "prop23m": PatternSpec.prop23_mirror,
            "p3plusarc": PatternSpec.p3_plus_arc,
            "thm32": PatternSpec.thm32,
        }
        if t in fixed:
            return fixed[t]()
        if t.startswith("star:"):
            parts = t[5:].split(",")
            if len(parts) != 2:
                raise BadParamsError(f"star token must look like star:p,q, got {token!r}")
            try:
                p, q = int(parts[0]), int(parts[1])
            except ValueError:
                raise BadParamsError(f"bad star parameters in {token!r}") from None
            return PatternSpec.star(p, q)
        prefixed = {
            "dpath": PatternSpec.directed_path,
            "dcycle": PatternSpec.directed_cycle,
            "ttour": PatternSpec.transitive_tournament,
            "matching": PatternSpec.matching,
            "adpath": PatternSpec.antidirected_path,
            "c": PatternSpec.directed_cycle,  # c3 is shorthand for dcycle3
        }
        for prefix in ("dpath", "dcycle", "ttour", "matching", "adpath", "c"):
            if t.startswith(prefix) and t[len(prefix):].isdigit():
                return prefixed[prefix](int(t[len(prefix):]))
        raise BadParamsError(f"unknown pattern token {token!r}")


def turan_edges(n: int, r: int) -> int:
    """Edge count of the complete r-partite graph on n vertices, parts as equal
    as possible."""
    if n < 0 or r < 1:
        raise BadParamsError("turan_edges needs n >= 0 and r >= 1")
    if r >= n:
        return n * (n - 1) // 2
    base, extra = divmod(n, r)
    sq = extra * (base + 1) ** 2 + (r - extra) * base ** 2
    return (n * n - sq) // 2


def formula_value(spec: PatternSpec, n: int) -> tuple[int, str]:
    """Closed-form value and a validity note: exact for all n, or asserted only
    for sufficiently large n (small n may legitimately deviate)."""
    if n < 1:
        raise BadParamsError("formula_value needs n >= 1")
    kind = spec.kind
    if kind == "dpath":
        return turan_edges(n, spec.params[0] - 1), VALID_ALL
    if kind == "dcycle":
        # a transitive tournament has no directed cycle, so nothing is excluded
        return n * (n - 1) // 2, VALID_ALL
    if kind == "ttour":
        z = compressibility(spec.graph).value
        return turan_edges(n, z - 1), VALID_ALL
    if kind == "oc4":
        return turan_edges(n, 3), VALID_ALL
    if kind == "star":
        p, q = spec.params
        if p > q:
            p, q = q, p  # reversing every arc swaps the roles
        if p == 0:
            # the (q-1)st cycle power needs n >= 2q-1; below that every
            # near-regular tournament is free and the bound does not bind
            return (q - 1) * n, VALID_ALL if n >= 2 * q - 1 else VALID_LARGE
        return (p - 1) * n + (n + q - p) ** 2 // 4, VALID_LARGE
    if kind == "matching":
        k = spec.params[0]
        if n < 2 * k:
            return n * (n - 1) // 2, VALID_ALL
        clique = (2 * k - 1) * (2 * k - 2) // 2
        hub = (k - 1) * (n - k + 1) + (k - 1) * (k - 2) // 2
        return max(clique, hub), VALID_ALL
    if kind == "adpath":
        if spec.params[0] != 4:
            raise NoFormulaError("closed form known only for the 4-vertex antidirected path")
        if n < 2:
            raise BadParamsError("the 2n-3 formula applies for n >= 2")
        return 2 * n - 3, VALID_ALL
    if kind in ("prop23", "prop23m"):
        return n * n // 4, VALID_LARGE
    if kind == "p3plusarc":
        return 2 * n - 3, VALID_LARGE
    if kind == "thm32":
        return n * n // 4 + (n + 1) // 2, VALID_LARGE
    raise NoFormulaError(f"no closed form for pattern kind {kind!r}")


# --- constructions -------------------------------------------------------------


def _cycle_power_arcs(vertices: Sequence[int], width: int) -> list[tuple[int, int]]:
    """Arcs from each vertex to the next `width` vertices around the cycle."""
    m = len(vertices)
    if width < 0:
        raise BadParamsError("cycle power width must be >= 0")
    if width == 0:
        return []
    if m < 2 * width + 1:
        raise BadParamsError(
            f"cycle power of width {width} needs at least {2 * width + 1} vertices, got {m}"
        )
    return [
        (vertices[i], vertices[(i + s) % m]) for i in range(m) for s in range(1, width + 1)
    ]


def build_construction(
    name: str,
    n: int,
    *,
    r: Optional[int] = None,
    p: Optional[int] = None,
    q: Optional[int] = None,
    d: Optional[int] = None,
    pattern: Optional[PatternSpec] = None,
) -> OrientedGraph:
    """Named extremal constructions.

    turan: blow-up of an r-vertex tournament over parts as equal as possible.
      With a pattern, the orientation comes from a tournament that admits no
      homomorphism from it (so the blow-up is pattern-free); without one, the
      parts are ordered transitively.  r=2 without a pattern gives the
      antidirected orientation.
    cyclepower: arcs from each vertex to the next q-1 vertices around a cycle
      (every out-degree q-1); free of the out-star with q leaves.
    starpartition: parts C and D with |D| = d (default rounds (n+q-p)/2 up),
      cycle power of width p-1 inside C, width q-1 inside D, all C->D arcs;
      free of the star with in-degree p, out-degree q, for 1 <= p <= q.
    thm32: all arcs from the smaller part to the larger plus a directed cycle
      on the larger part (needs n >= 5).
    prop26: arc v->u plus arcs u->w and w->v for every other vertex w.
    prop27: arc v->u plus arcs u->w and v->w for every other vertex w.
    """
    if n < 1:
        raise BadParamsError("constructions need n >= 1")
    if name == "turan":
        if r is None or r < 1:
            raise BadParamsError("turan construction needs r >= 1")
        if pattern is None:
            order = OrientedGraph.from_arcs(
                r, [(i, j) for i in range(r) for j in range(i + 1, r)]
            )
        else:
            res = compressibility(pattern.graph)
            if res.is_infinite:
                order = OrientedGraph.from_arcs(
                    r, [(i, j) for i in range(r) for j in range(i + 1, r)]
                )
            else:
                if r > res.witness.n:
                    raise BadParamsError(
                        f"no pattern-free blow-up on {r} parts: every tournament on "
                        f"{res.value} or more vertices admits the pattern"
                    )
                order = res.witness.induced(range(r))
        if r >= n:
            order = order.induced(range(n))
            return order
        base, extra = divmod(n, r)
        bounds = []
        start = 0
        for i in range(r):
            size = base + (1 if i < extra else 0)
            bounds.append(range(start, start + size))
            start += size
        arcs = [
            (u, v)
            for i in range(r)
            for j in range(r)
            if order.has_arc(i, j)
            for u in bounds[i]
            for v in bounds[j]
        ]
        return OrientedGraph.from_arcs(n, arcs)
    if name == "cyclepower":
        if q is None or q < 1:
            raise BadParamsError("cyclepower needs q >= 1")
        return OrientedGraph.from_arcs(n, _cycle_power_arcs(range(n), q - 1))
    if name == "starpartition":
        if p is None or q is None or not 1 <= p <= q:
            raise BadParamsError("starpartition needs 1 <= p <= q")
        if d is None:
            d = (n + q - p + 1) // 2
        if not 0 <= d <= n:
            raise BadParamsError(f"part size d={d} out of range for n={n}")
        c = n - d
        part_c = range(0, c)
        part_d = range(c, n)
        arcs = _cycle_power_arcs(part_c, p - 1) + _cycle_power_arcs(part_d, q - 1)
        arcs += [(u, w) for u in part_c for w in part_d]
        return OrientedGraph.from_arcs(n, arcs)
    if name == "thm32":
        if n < 5:
            raise BadParamsError("thm32 construction needs n >= 5 (cycle length >= 3)")
        small = n // 2
        big = list(range(small, n))
        arcs = [(u, w) for u in range(small) for w in big]
        arcs += [(big[i], big[(i + 1) % len(big)]) for i in range(len(big))]
        return OrientedGraph.from_arcs(n, arcs)
    if name == "prop26":
        if n < 2:
            raise BadParamsError("prop26 construction needs n >= 2")
        arcs = [(1, 0)]
        arcs += [(0, w) for w in range(2, n)]
        arcs += [(w, 1) for w in range(2, n)]
        return OrientedGraph.from_arcs(n, arcs)
    if name == "prop27":
        if n < 2:
            raise BadParamsError("prop27 construction needs n >= 2")
        arcs = [(1, 0)]
        arcs += [(0, w) for w in range(2, n)]
        arcs += [(1, w) for w in range(2, n)]
        return OrientedGraph.from_arcs(n, arcs)
    raise BadParamsError(f"unknown construction {name!r}")


def _seed_candidates(spec: PatternSpec, n: int) -> list[OrientedGraph]:
    cands: list[OrientedGraph] = []

    def attempt(name: str, **kw) -> None:
        try:
            cands.append(build_construction(name, n, **kw))
        except (BadParamsError, TooLargeError):
            pass

    kind = spec.kind
    if kind == "star":
        p, q = spec.params
        if p > q:
            mirror = PatternSpec.star(q, p)
            return [g.reverse() for g in _seed_candidates(mirror, n)]
        if p == 0:
            attempt("cyclepower", q=q)
        else:
            attempt("starpartition", p=p, q=q)
    elif kind == "matching":
        k = spec.params[0]
        m = min(n, 2 * k - 1)
        clique = [(i, j) for i in range(m) for j in range(i + 1, m)]
        cands.append(OrientedGraph.from_arcs(n, clique))
        if n >= k:
            hubs = k - 1
            arcs = [(i, j) for i in range(hubs) for j in range(i + 1, n)]
            cands.append(OrientedGraph.from_arcs(n, arcs))
    elif kind == "adpath" and spec.params[0] == 4:
        attempt("prop26")
    elif kind == "p3plusarc":
        attempt("prop27")
    elif kind == "thm32":
        attempt("thm32")
        attempt("turan", r=2, pattern=spec)
    try:
        res = compressibility(spec.graph)
    except TooLargeError:
        res = None
    if res is not None:
        r = n if res.is_infinite else min(res.value - 1, n)
        attempt("turan", r=r, pattern=spec)
    return cands


def _construction_seed(spec: PatternSpec, n: int) -> Optional[OrientedGraph]:
    """Best verified pattern-free construction on n vertices, if any applies."""
    best: Optional[OrientedGraph] = None
    for g in _seed_candidates(spec, n):
        if g.n != n or not is_free(g, spec.graph):
            continue
        if best is None or g.arc_count > best.arc_count:
            best = g
    return best


@dataclass(frozen=True)
class ExtremalRecord:
    """Exact exo value with a verified witness; formula fields are filled only
    by verify_against_formula."""

    n: int
    pattern: PatternSpec
    value: int
    witness: OrientedGraph
    nodes: int = 0
    formula: Optional[int] = None
    matches_formula: Optional[bool] = None
    validity: Optional[str] = None


def _run_levels(
    n: int,
    f_masks: tuple[int, ...],
    f_n: int,
    frontier: list[tuple[tuple[int, ...], int]],
    k0: int,
    best: int,
    best_digits: Optional[bytes],
    budget: Optional[int],
) -> tuple[int, Optional[bytes], int, bool]:
    """Extend F-free canonical representatives from level k0 up to n.

    Returns (best value, witness digits, nodes examined, budget exceeded).
    Ties at the final level keep the smallest digit string.
    """
    pattern = OrientedGraph(f_n, f_masks)
    pairs_total = n * (n - 1) // 2
    nodes = 0
    level = frontier
    for k in range(k0, n):
        cap_parent = pairs_total - k * (k - 1) // 2
        cap_child = pairs_total - (k + 1) * k // 2
        last = k + 1 == n
        nxt: list[tuple[tuple[int, ...], int]] = []
        for masks, arcs in level:
            if arcs + cap_parent <= best:
                continue
            seen: set[bytes] = set()
            for state in _ext_states(k, False):
                child_arcs = arcs + k - state.count(0)
                if last:
                    if child_arcs < best:
                        break  # states are ordered densest first
                elif child_arcs + cap_child <= best:
                    break
                nodes += 1
                if budget is not None and nodes > budget:
                    return best, best_digits, nodes, True
                raw = extend_masks(masks, state)
                child = OrientedGraph(k + 1, raw)
                if contains_copy_through(child, pattern, k) is not None:
                    continue
                digits = accept_child(raw, k + 1)
                if digits is None or digits in seen:
                    continue
                seen.add(digits)
                if last:
                    if child_arcs > best:
                        best, best_digits = child_arcs, digits
                    elif best_digits is None or digits < best_digits:
                        best_digits = digits
                else:
                    nxt.append((masks_from_digits(digits, k + 1), child_arcs))
        level = nxt
    return best, best_digits, nodes, False


def _levels_worker(args) -> tuple[int, Optional[bytes], int, bool]:
    return _run_levels(*args)


def _digits_of(g: OrientedGraph) -> bytes:
    return bytes(int(c) for c in canonical_code(g).digits)


def oracle_exo(
    n: int,
    pattern: "PatternSpec | OrientedGraph",
    budget: Optional[int] = None,
    jobs: int = 1,
) -> ExtremalRecord:
    """Exact exo(n, pattern) with a verified extremal witness.

    Exhaustive up to n = 7; n = 8..10 needs an explicit node budget (the run
    is exact if it finishes, else BudgetExceededError carries the certified
    lower bound).  The budget caps extension nodes per worker.  The witness is
    the smallest canonical code among the maximum graphs the pruned search
    retains; the value itself never depends on jobs or budget.
    """
    spec = pattern if isinstance(pattern, PatternSpec) else PatternSpec.custom(pattern)
    f = spec.graph
    if f.arc_count == 0:
        raise EmptyPatternError("oracle needs a pattern with at least one arc")
    if n < 1:
        raise BadParamsError("oracle needs n >= 1")
    if n > MAX_CODE_VERTICES:
        raise TooLargeError(f"oracle capped at {MAX_CODE_VERTICES} vertices, got {n}")
    if n > MAX_EXACT_VERTICES and budget is None:
        raise TooLargeError(
            f"n = {n} exceeds the exhaustive cap {MAX_EXACT_VERTICES}; pass a node budget "
            "to search for certified lower bounds"
        )
    if f.n > n:
        # the pattern cannot fit, so the complete transitive order is free
        witness = OrientedGraph.from_arcs(
            n, [(i, j) for i in range(n) for j in range(i + 1, n)]
        )
        return ExtremalRecord(n, spec, witness.arc_count, witness)

    seed = _construction_seed(spec, n)
    best = seed.arc_count if seed is not None else -1
    best_digits = _digits_of(seed) if seed is not None else None

    frontier = [((0,), 0)]
    k0 = 1
    if jobs > 1 and n >= 4:
        # grow serially (unbounded, so the frontier is complete) to the split
        # level, then fan the frontier out across workers
        split_at = min(3, n - 1)
        level = frontier
        for k in range(1, split_at):
            nxt = []
            for masks, arcs in level:
                seen: set[bytes] = set()
                for state in _ext_states(k, False):
                    raw = extend_masks(masks, state)
                    child = OrientedGraph(k + 1, raw)
                    if contains_copy_through(child, f, k) is not None:
                        continue
                    digits = accept_child(raw, k + 1)
                    if digits is None or digits in seen:
                        continue
                    seen.add(digits)
                    nxt.append((masks_from_digits(digits, k + 1), len(digits) - digits.count(0)))
            level = nxt
        chunks: list[list[tuple[tuple[int, ...], int]]] = [[] for _ in range(jobs)]
        for i, item in enumerate(level):
            chunks[i % jobs].append(item)
        args = [
            (n, f.out, f.n, chunk, split_at, best, best_digits, budget)
            for chunk in chunks
            if chunk
        ]
        total_nodes = 0
        exceeded = False
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for value, digits, used, ex in pool.map(_levels_worker, args):
                total_nodes += used
                exceeded = exceeded or ex
                if value > best:
                    best, best_digits = value, digits
                elif value == best and digits is not None:
                    if best_digits is None or digits < best_digits:
                        best_digits = digits
        nodes = total_nodes
    else:
        best, best_digits, nodes, exceeded = _run_levels(
            n, f.out, f.n, frontier, k0, best, best_digits, budget
        )

    if best_digits is not None:
        witness = OrientedGraph(n, masks_from_digits(best_digits, n))
    else:
        # only reachable when the budget ran out before any class reached
        # level n; the empty graph still certifies a lower bound of 0
        witness = OrientedGraph.empty(n)
        best = 0
    if exceeded:
        raise BudgetExceededError(best, witness, nodes)
    if not is_free(witness, f) or witness.arc_count != best:
        raise InvariantError("internal error: witness failed verification")
    return ExtremalRecord(n, spec, best, witness, nodes=nodes)


@dataclass(frozen=True)
class VerifyRow:
    n: int
    oracle: int
    formula: int
    validity: str
    status: str  # MATCH, ORACLE_HIGHER, or ORACLE_LOWER
    witness_code: str


@dataclass(frozen=True)
class VerifyReport:
    pattern: PatternSpec
    rows: tuple[VerifyRow, ...]

    @property
    def first_match_n(self) -> Optional[int]:
        for row in self.rows:
            if row.status == "MATCH":
                return row.n
        return None

    def to_json_obj(self) -> dict:
        return {
            "pattern": self.pattern.token,
            "rows": [
                {
                    "n": r.n,
                    "oracle": r.oracle,
                    "formula": r.formula,
                    "validity": r.validity,
                    "status": r.status,
                    "witness": r.witness_code,
                }
                for r in self.rows
            ],
        }

    def to_text(self) -> str:
        lines = [f"pattern {self.pattern.token}"]
        lines.append(f"{'n':>3} {'oracle':>7} {'formula':>8} {'status':<14} validity")
        for r in self.rows:
            lines.append(
                f"{r.n:>3} {r.oracle:>7} {r.formula:>8} {r.status:<14} {r.validity}"
            )
        return "\n".join(lines)


def verify_against_formula(
    spec: PatternSpec,
    ns: Iterable[int],
    budget: Optional[int] = None,
    jobs: int = 1,
) -> VerifyReport:
    """Compare the oracle against the closed form over a range of n.

    For formulas valid only at large n, a mismatch is a recorded finding, not
    an error.  The oracle value is always checked against the arc count of the
    matching verified-free construction; falling below it is an internal error.
    """
    rows = []
    for n in sorted(set(ns)):
        record = oracle_exo(n, spec, budget=budget, jobs=jobs)
        value, validity = formula_value(spec, n)
        seed = _construction_seed(spec, n)
        if seed is not None and record.value < seed.arc_count:
            raise InvariantError(
                f"oracle value {record.value} below the verified construction "
                f"bound {seed.arc_count} at n={n}"
            )
        if record.value == value:
            status = "MATCH"
        elif record.value > value:
            status = "ORACLE_HIGHER"
        else:
            status = "ORACLE_LOWER"
        rows.append(
            VerifyRow(
                n=n,
                oracle=record.value,
                formula=value,
                validity=validity,
                status=status,
                witness_code=canonical_code(record.witness).serialize(),
            )
        )
    return VerifyReport(spec, tuple(rows))
