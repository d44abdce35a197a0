"""Bipartite extraction, almost-regular refinement, rich-set embedding, and
random zooming, composed into a pipeline that embeds a small bipartite pattern
into a dense host.

All randomness flows through random.Random(seed); every scan is index-ordered,
so a fixed seed reproduces the run bit for bit.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Optional

from .containment import is_copy_witness
from .graphs import BipartiteDigraph, InvariantError, OrientedGraph
from .homomorphism import VertexMap
from .extremal import BadParamsError

VERIFY_SUBSET_CAP = 10 ** 6


class RegularizeError(Exception):
    """Base for pipeline-stage failures."""


class AttemptsExhausted(RegularizeError):
    """Bipartite extraction hit its resample limit below the quarter bound."""


class TooSmall(RegularizeError):
    """Too few vertices to split into 2t degree buckets."""


class CertificateInsufficient(RegularizeError):
    """A rich-set certificate failed to supply an unused common in-neighbor."""


class RetriesExhausted(RegularizeError):
    """No sampled zoom was accepted within the retry limit."""


class InfeasibleConfig(RegularizeError):
    """Zoom parameters violate the feasibility thresholds."""


# --- bipartite extraction ------------------------------------------------------


def extract_bipartite(g: OrientedGraph, seed: int, max_attempts: int = 256) -> BipartiteDigraph:
    """Balanced bipartition (X, Y) keeping only X->Y arcs, at least a quarter
    of the original arcs retained.

    Repeats: draw a random balanced partition, then greedily swap any (x, y)
    pair across parts while a swap strictly increases the retained count.
    """
    n = g.n
    target = (g.arc_count + 3) // 4
    rng = random.Random(seed)
    x_size = (n + 1) // 2
    outs, ins = g.out, g.in_masks
    for _ in range(max_attempts):
        perm = list(range(n))
        rng.shuffle(perm)
        x_mask = 0
        for v in perm[:x_size]:
            x_mask |= 1 << v
        y_mask = ((1 << n) - 1) ^ x_mask
        count = sum((outs[v] & y_mask).bit_count() for v in perm[:x_size])
        improved = True
        while count < target and improved:
            improved = False
            xm, ym = x_mask, y_mask
            for u in range(n):
                if not (xm >> u) & 1:
                    continue
                for w in range(n):
                    if not (ym >> w) & 1:
                        continue
                    gained = (outs[w] & ((ym ^ (1 << w)) | (1 << u))).bit_count()
                    gained += (ins[u] & (xm ^ (1 << u))).bit_count()
                    lost = (outs[u] & ym).bit_count()
                    lost += (ins[w] & (xm ^ (1 << u))).bit_count()
                    if gained > lost:
                        x_mask = (xm ^ (1 << u)) | (1 << w)
                        y_mask = (ym ^ (1 << w)) | (1 << u)
                        count += gained - lost
                        improved = True
                        break
                if improved:
                    break
        if count >= target:
            part_x = [v for v in range(n) if (x_mask >> v) & 1]
            part_y = [v for v in range(n) if (y_mask >> v) & 1]
            arcs = [
                (u, w) for u in part_x for w in part_y if g.has_arc(u, w)
            ]
            return BipartiteDigraph.from_arcs(part_x, part_y, arcs)
    raise AttemptsExhausted(
        f"no balanced partition retaining {target} arcs found in {max_attempts} attempts"
    )


# --- almost-regular refinement --------------------------------------------------


@dataclass(frozen=True)
class RegularizeResult:
    """Output of the degree-bucket refinement.

    c is the density constant measured at the level where the final extraction
    fired (4*arcs/n^(1+epsilon) there); both reported bounds are guaranteed
    against it.  K1 and K2 scale the average degree to the minimum and maximum:
    K1*delta = avg = K2*Delta.
    """

    subgraph: BipartiteDigraph
    epsilon: float
    K: float
    c: float
    t: int
    d0: float
    n_s: int
    K1: float
    K2: float


def _degree_t(r: int, t_override: Optional[int]) -> int:
    if t_override is not None:
        if t_override < 1:
            raise BadParamsError("tOverride must be >= 1")
        return t_override
    if r < 1:
        raise BadParamsError("r must be >= 1")
    if r == 1:
        raise BadParamsError(
            "r = 1 gives epsilon = 0, where the bucket count is undefined; pass tOverride"
        )
    eps = 1.0 - 1.0 / r
    return math.ceil(2 ** (1.0 / eps ** 2 + 1.0))


def _vertex_degrees(h: BipartiteDigraph) -> dict[int, int]:
    degs = {}
    for i, u in enumerate(h.part_u):
        degs[u] = h.out_masks[i].bit_count()
    for j, w in enumerate(h.part_w):
        degs[w] = h.in_masks[j].bit_count()
    return degs


def _restrict_to(h: BipartiteDigraph, keep: set[int]) -> BipartiteDigraph:
    return h.restrict(
        [u for u in h.part_u if u in keep],
        [w for w in h.part_w if w in keep],
    )


def almost_regular_subdigraph(
    h: BipartiteDigraph,
    c: float,
    r: int,
    t_override: Optional[int] = None,
) -> RegularizeResult:
    """Extract a K-almost-regular subdigraph by degree bucketing.

    Split the vertices into 2t buckets by descending degree.  If at most half
    of the arcs touch the top bucket, drop it and then repeatedly delete the
    vertex of smallest current degree while that degree is below
    d0 = (c/40)*n^epsilon; otherwise recurse on the top bucket together with
    the bucket it exchanges the most arcs with.  The density constant is
    re-measured at every level, so the reported guarantees hold exactly.
    """
    eps = 1.0 - 1.0 / r if r >= 1 else 0.0
    t = _degree_t(r, t_override)
    k_bound = 20.0 * t
    measured = 4.0 * h.arc_count / (h.n ** (1.0 + eps)) if h.n else 0.0
    if abs(c - measured) > 1e-6 * max(1.0, measured):
        raise BadParamsError(
            f"supplied density constant {c} does not match 4|E|/n^(1+eps) = {measured}"
        )

    level = h
    while True:
        n_level = level.n
        if 2 * t > n_level:
            raise TooSmall(
                f"cannot split {n_level} vertices into {2 * t} degree buckets"
            )
        e_level = level.arc_count
        c_level = 4.0 * e_level / (n_level ** (1.0 + eps))
        degs = _vertex_degrees(level)
        order = sorted(degs, key=lambda v: (-degs[v], v))
        base, extra = divmod(n_level, 2 * t)
        buckets = []
        start = 0
        for i in range(2 * t):
            size = base + (1 if i < extra else 0)
            buckets.append(order[start:start + size])
            start += size
        top = set(buckets[0])
        inside = sum(
            1 for u, w in level.arcs() if u in top and w in top
        )
        touching = sum(degs[v] for v in top) - inside
        if 2 * touching <= e_level:
            d0 = (c_level / 40.0) * (n_level ** eps)
            alive = set(degs) - top
            cur = _restrict_to(level, alive)
            while alive:
                cur_degs = _vertex_degrees(cur)
                victim = min(alive, key=lambda v: (cur_degs[v], v))
                if cur_degs[victim] >= d0:
                    break
                alive.remove(victim)
                cur = _restrict_to(cur, alive)
            sub = cur
            n_s = sub.n
            arcs_s = sub.arc_count
            if arcs_s < (c_level / 10.0) * (n_s ** (1.0 + eps)) - 1e-9:
                raise InvariantError("arc bound violated after refinement")
            sub_degs = _vertex_degrees(sub)
            if sub_degs:
                delta = min(sub_degs.values())
                big = max(sub_degs.values())
            else:
                delta = big = 0
            if big > k_bound * delta + 1e-9:
                raise InvariantError("almost-regularity bound violated after refinement")
            avg = 2.0 * arcs_s / n_s if n_s else 0.0
            k1 = avg / delta if delta else 0.0
            k2 = avg / big if big else 0.0
            return RegularizeResult(
                subgraph=sub,
                epsilon=eps,
                K=k_bound,
                c=c_level,
                t=t,
                d0=d0,
                n_s=n_s,
                K1=k1,
                K2=k2,
            )
        pair_counts = [0]
        for i in range(1, 2 * t):
            among = set(buckets[i])
            cnt = sum(
                1
                for u, w in level.arcs()
                if (u in top and w in among) or (u in among and w in top)
            )
            pair_counts.append(cnt)
        best_i = max(range(1, 2 * t), key=lambda i: (pair_counts[i], -i))
        keep = top | set(buckets[best_i])
        if len(keep) >= n_level:
            # two buckets span everything (t = 1), so recursion cannot shrink
            raise TooSmall(
                f"bucket pair spans all {n_level} vertices; a larger t is needed"
            )
        level = _restrict_to(level, keep)


# --- rich sets and embedding ----------------------------------------------------


@dataclass(frozen=True)
class RichSetCertificate:
    """Subset R of the W side where every r-subset has >= h common in-neighbors.

    witnesses holds (r-subset, common in-neighbors) pairs for every r-subset
    when C(|R|, r) is at most 10^6, else it is left empty.
    """

    subset: tuple[int, ...]
    r: int
    h: int
    witnesses: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]


def find_rich_set(g: BipartiteDigraph, r: int, h: int) -> Optional[RichSetCertificate]:
    """Greedy partial coloring over U; the first vertex it cannot color yields
    the certificate.

    Scan U in index order; assign each u the lexicographically first r-subset
    of its out-neighborhood whose color count is below h.  A vertex with no
    assignable subset can never become assignable later, so its first h
    out-neighbors form the rich set.  Returns None when every vertex gets a
    color (possible at the exact saturation threshold) or when the stuck
    vertex has fewer than h out-neighbors.
    """
    if r < 1 or h < 1:
        raise BadParamsError("find_rich_set needs r >= 1 and h >= 1")
    counts: dict[tuple[int, ...], int] = {}
    for i in range(len(g.part_u)):
        mask = g.out_masks[i]
        neigh = []
        m = mask
        while m:
            j = (m & -m).bit_length() - 1
            neigh.append(j)
            m &= m - 1
        assigned = False
        if len(neigh) >= r:
            for combo in itertools.combinations(neigh, r):
                if counts.get(combo, 0) < h:
                    counts[combo] = counts.get(combo, 0) + 1
                    assigned = True
                    break
        if assigned:
            continue
        if len(neigh) < h:
            return None
        subset_idx = neigh[:h]
        subset = tuple(g.part_w[j] for j in subset_idx)
        witnesses = []
        if math.comb(h, r) <= VERIFY_SUBSET_CAP:
            for combo in itertools.combinations(subset_idx, r):
                common = ~0
                for j in combo:
                    common &= g.in_masks[j]
                ids = []
                m = common & ((1 << len(g.part_u)) - 1)
                while m:
                    i2 = (m & -m).bit_length() - 1
                    ids.append(g.part_u[i2])
                    m &= m - 1
                if len(ids) < h:
                    raise InvariantError(
                        "rich-set certificate failed verification; coloring bug"
                    )
                witnesses.append((tuple(g.part_w[j] for j in combo), tuple(ids)))
        return RichSetCertificate(
            subset=subset, r=r, h=h, witnesses=tuple(witnesses)
        )
    return None


def verify_certificate(g: BipartiteDigraph, cert: RichSetCertificate) -> bool:
    """Independent brute-force check of the richness property."""
    if math.comb(len(cert.subset), cert.r) > VERIFY_SUBSET_CAP:
        return True
    w_pos = {w: j for j, w in enumerate(g.part_w)}
    for combo in itertools.combinations(cert.subset, cert.r):
        common = ~0
        for w in combo:
            common &= g.in_masks[w_pos[w]]
        common &= (1 << len(g.part_u)) - 1
        if common.bit_count() < cert.h:
            return False
    return True


def embed_via_rich_set(
    g: BipartiteDigraph,
    pattern: BipartiteDigraph,
    cert: RichSetCertificate,
) -> VertexMap:
    """Embed the pattern: its W side goes injectively onto the rich set in
    index order, then each pattern U vertex takes the lowest unused common
    in-neighbor of its images.
    """
    if cert.h != pattern.n:
        raise BadParamsError(
            f"certificate built for h = {cert.h} but the pattern has {pattern.n} vertices"
        )
    if any(m.bit_count() > cert.r for m in pattern.out_masks):
        raise BadParamsError("pattern out-degrees exceed the certificate's r")
    if len(pattern.part_w) > len(cert.subset):
        raise CertificateInsufficient(
            f"rich set of size {len(cert.subset)} cannot host "
            f"{len(pattern.part_w)} pattern vertices"
        )
    w_pos = {w: j for j, w in enumerate(g.part_w)}
    mapping: dict[int, int] = {}
    for idx, b in enumerate(pattern.part_w):
        mapping[b] = cert.subset[idx]
    used_u: set[int] = set()
    full_u = (1 << len(g.part_u)) - 1
    for i, a in enumerate(pattern.part_u):
        m = pattern.out_masks[i]
        common = full_u
        while m:
            jb = (m & -m).bit_length() - 1
            host_w = mapping[pattern.part_w[jb]]
            common &= g.in_masks[w_pos[host_w]]
            m &= m - 1
        chosen = None
        mm = common
        while mm:
            i2 = (mm & -mm).bit_length() - 1
            cand = g.part_u[i2]
            if cand not in used_u:
                chosen = cand
                break
            mm &= mm - 1
        if chosen is None:
            raise CertificateInsufficient(
                f"no unused common in-neighbor for pattern vertex {a}"
            )
        used_u.add(chosen)
        mapping[a] = chosen
    src_n = max(list(pattern.part_u) + list(pattern.part_w)) + 1
    tgt_n = max(list(g.part_u) + list(g.part_w)) + 1
    return VertexMap.of(src_n, tgt_n, mapping)


def verify_bipartite_embedding(
    g: BipartiteDigraph, pattern: BipartiteDigraph, vm: VertexMap
) -> bool:
    """Check an embedding through the containment module on the image-induced
    sub-host (hosts can exceed the dense-graph vertex cap; the image cannot)."""
    mapping = vm.as_dict()
    if len(set(mapping.values())) != len(mapping):
        return False
    if set(mapping) != set(pattern.part_u) | set(pattern.part_w):
        return False
    image_u = sorted(mapping[a] for a in pattern.part_u)
    image_w = sorted(mapping[b] for b in pattern.part_w)
    if not set(image_u) <= set(g.part_u) or not set(image_w) <= set(g.part_w):
        return False
    sub = g.restrict(image_u, image_w)
    host_small, host_label = sub.to_oriented()
    pat_small, pat_label = pattern.to_oriented()
    small_map = {
        pat_label[v]: host_label[mapping[v]] for v in mapping
    }
    return is_copy_witness(
        host_small,
        pat_small,
        VertexMap.of(pat_small.n, host_small.n, small_map),
    )


# --- random zooming --------------------------------------------------------------


@dataclass(frozen=True)
class ZoomConfig:
    """Zoom parameters; p follows the sampling rule for the (possibly
    truncated) U side and is exactly 1 at the truncation cap."""

    r: int
    h: int
    d: int
    p: float
    seed: int
    max_retries: int = 1024

    @staticmethod
    def for_instance(
        g: BipartiteDigraph,
        r: int,
        h: int,
        seed: int,
        d: Optional[int] = None,
        max_retries: int = 1024,
    ) -> "ZoomConfig":
        if r < 1 or h < 1:
            raise BadParamsError("zoom needs r >= 1 and h >= 1")
        nu, nw = len(g.part_u), len(g.part_w)
        if nu == 0 or nw == 0:
            raise InfeasibleConfig("zoom host has an empty part")
        p = _zoom_probability(nu, nw, r, h)
        if d is None:
            d = g.min_out_degree()
        return ZoomConfig(r=r, h=h, d=d, p=p, seed=seed, max_retries=max_retries)


def _zoom_probability(nu: int, nw: int, r: int, h: int) -> float:
    cap = 4 * h * (2 * nw) ** r
    u_eff = min(nu, cap)
    if u_eff == cap:
        return 1.0
    p = (1.0 / (2 * nw)) * (u_eff / (4.0 * h)) ** (1.0 / r)
    return min(p, 1.0)


def random_zoom(
    g: BipartiteDigraph,
    pattern: BipartiteDigraph,
    cfg: ZoomConfig,
) -> VertexMap:
    """Sample a p-random subset W' of the W side, keep U vertices with at
    least p*d/2 sampled out-neighbors, and accept the trial when
    |W'| <= 2p|W| and |U'| >= |U|/4; an accepted trial is embedded through a
    rich set.  Vertex ids survive restriction, so the embedding already refers
    to the original host.
    """
    vm, _ = _random_zoom_stats(g, pattern, cfg)
    return vm


def _random_zoom_stats(
    g: BipartiteDigraph,
    pattern: BipartiteDigraph,
    cfg: ZoomConfig,
) -> tuple[VertexMap, dict]:
    if cfg.h != pattern.n:
        raise InfeasibleConfig(
            f"config h = {cfg.h} but the pattern has {pattern.n} vertices"
        )
    if any(m.bit_count() > cfg.r for m in pattern.out_masks):
        raise InfeasibleConfig("pattern out-degrees exceed the config's r")
    nu, nw = len(g.part_u), len(g.part_w)
    if nu == 0 or nw == 0:
        raise InfeasibleConfig("zoom host has an empty part")
    expected_p = _zoom_probability(nu, nw, cfg.r, cfg.h)
    if abs(cfg.p - expected_p) > 1e-9:
        raise InfeasibleConfig(
            f"config p = {cfg.p} but the sampling rule gives {expected_p}"
        )
    if cfg.d < max(40, 2 * cfg.h):
        raise InfeasibleConfig(
            f"min out-degree d = {cfg.d} below the threshold {max(40, 2 * cfg.h)}"
        )
    if cfg.p * cfg.d / 2.0 < max(20, cfg.h):
        raise InfeasibleConfig(
            f"p*d/2 = {cfg.p * cfg.d / 2.0} below the threshold {max(20, cfg.h)}"
        )
    cap = 4 * cfg.h * (2 * nw) ** cfg.r
    if nu > cap:
        host = g.restrict(list(g.part_u[:cap]), list(g.part_w))
    else:
        host = g
    hu = len(host.part_u)
    if host.min_out_degree() < cfg.d:
        raise InfeasibleConfig(
            f"host min out-degree {host.min_out_degree()} below config d = {cfg.d}"
        )
    rng = random.Random(cfg.seed)
    threshold = cfg.p * cfg.d / 2.0
    for trial in range(cfg.max_retries):
        w_mask = 0
        w_ids = []
        for j, w in enumerate(host.part_w):
            if rng.random() < cfg.p:
                w_mask |= 1 << j
                w_ids.append(w)
        if len(w_ids) > 2.0 * cfg.p * nw:
            continue
        u_ids = [
            u
            for i, u in enumerate(host.part_u)
            if (host.out_masks[i] & w_mask).bit_count() >= threshold
        ]
        if 4 * len(u_ids) < hu:
            continue
        zoomed = host.restrict(u_ids, w_ids)
        cert = find_rich_set(zoomed, cfg.r, cfg.h)
        if cert is None:
            continue
        vm = embed_via_rich_set(zoomed, pattern, cert)
        if not verify_bipartite_embedding(g, pattern, vm):
            raise InvariantError("zoom produced an embedding that failed verification")
        stats = {
            "retries": trial + 1,
            "w_size_ok": True,
            "u_size_ok": True,
            "w_sampled": len(w_ids),
            "u_kept": len(u_ids),
        }
        return vm, stats
    raise RetriesExhausted(
        f"no accepted sample in {cfg.max_retries} trials (p = {cfg.p})"
    )


# --- composed pipeline ------------------------------------------------------------


@dataclass(frozen=True)
class PipelineResult:
    """Embedding (when every stage's hypotheses held) plus stage-labeled
    measurements; failure carries the stage name and reason otherwise."""

    embedding: Optional[VertexMap]
    stages: tuple[tuple[str, dict], ...]
    failure: Optional[str]

    def to_json_obj(self) -> dict:
        return {
            "embedding": (
                None
                if self.embedding is None
                else [list(pair) for pair in self.embedding.mapping]
            ),
            "stages": [
                {"stage": name, **data} for name, data in self.stages
            ],
            "failure": self.failure,
        }


def faks_pipeline(
    g: OrientedGraph,
    pattern: BipartiteDigraph,
    r: int,
    seed: int,
    t_override: Optional[int] = None,
) -> PipelineResult:
    """Extract a bipartite half, refine it to almost-regularity, then zoom.

    Measures the density constant c = 4|E(B)|/n^(1+eps) after extraction, the
    scaling constants K1 and K2 after refinement, and the threshold constant
    the embedding theorem would require; each stage reports its numbers and a
    failed hypothesis stops the run with that stage's label.
    """
    if r < 1:
        raise BadParamsError("pipeline needs r >= 1")
    if any(m.bit_count() > r for m in pattern.out_masks):
        raise BadParamsError("pattern out-degrees exceed r")
    h_count = pattern.n
    eps = 1.0 - 1.0 / r
    stages: list[tuple[str, dict]] = []

    try:
        bip = extract_bipartite(g, seed * 4 + 1)
    except AttemptsExhausted as exc:
        return PipelineResult(None, tuple(stages), f"extract: {exc}")
    c = 4.0 * bip.arc_count / (g.n ** (1.0 + eps))
    stages.append(
        (
            "extract",
            {
                "n": g.n,
                "arcs": g.arc_count,
                "retained": bip.arc_count,
                "target": (g.arc_count + 3) // 4,
                "c": c,
                "epsilon": eps,
            },
        )
    )

    try:
        reg = almost_regular_subdigraph(bip, c, r, t_override=t_override)
    except (TooSmall, BadParamsError) as exc:
        return PipelineResult(None, tuple(stages), f"regularize: {exc}")
    sub = reg.subgraph
    if sub.arc_count == 0:
        return PipelineResult(
            None, tuple(stages), "regularize: refinement left no arcs"
        )
    sub_degs = _vertex_degrees(sub)
    delta = min(sub_degs.values())
    c_required = (
        max(20, h_count)
        * 20.0
        * reg.K1 ** (1.0 + 1.0 / r)
        * (reg.K2 / (4.0 * h_count)) ** (1.0 / r)
        * (reg.K1 / (reg.K2 + reg.K1)) ** (1.0 - 1.0 / r)
    )
    stages.append(
        (
            "regularize",
            {
                "n_s": reg.n_s,
                "arcs_s": sub.arc_count,
                "K": reg.K,
                "t": reg.t,
                "d0": reg.d0,
                "c_level": reg.c,
                "delta": delta,
                "Delta": max(sub_degs.values()),
                "K1": reg.K1,
                "K2": reg.K2,
                "c_required": c_required,
            },
        )
    )

    try:
        cfg = ZoomConfig.for_instance(
            sub, r, h_count, seed=seed * 4 + 3, d=delta
        )
        vm, zoom_stats = _random_zoom_stats(sub, pattern, cfg)
    except (InfeasibleConfig, RetriesExhausted, BadParamsError) as exc:
        stages.append(
            ("zoom", {"d": delta, "failure_detail": str(exc)})
        )
        return PipelineResult(None, tuple(stages), f"zoom: {exc}")
    stages.append(
        (
            "zoom",
            {
                "d": cfg.d,
                "p": cfg.p,
                "h": h_count,
                "r": r,
                "seed": cfg.seed,
                **zoom_stats,
            },
        )
    )
    if not verify_bipartite_embedding(sub, pattern, vm):
        raise InvariantError("pipeline embedding failed independent verification")
    return PipelineResult(vm, tuple(stages), None)
