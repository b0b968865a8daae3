"""Adjacency spectra, mixing certification, and greedy partitioning.

``spectrum`` computes adjacency eigenvalues of a regular graph (dense
symmetric solve up to 5000 vertices, Lanczos extremes above),
``mixing_check`` certifies the edge-distribution inequality
|e(U,W) - expected| <= rho * sqrt(|U||W|), and ``greedy_split`` runs
the seeded partition-growing algorithm whose output always passes
verify_rk: seed each part with vertices pairwise far apart, greedily
add high-coverage vertices until every part sees almost every other,
then patch the leftovers with fresh degree-one vertices.
"""

from __future__ import annotations

import math
import random
from collections import Counter, deque
from dataclasses import dataclass, field as dc_field

import numpy as np
import scipy.sparse as sparse
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from . import forbidden
from .structures import LabeledHypergraph, SplitPartition, verify_rk

_DENSE_LIMIT = 5000
_SEED_NODE_BUDGET = 100_000


def _bipartition(G: LabeledHypergraph):
    """BFS 2-coloring; returns (side0, side1) as sets or None."""
    color = {}
    for src in range(G.n):
        if src in color:
            continue
        color[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for w in G.adj[u]:
                if w not in color:
                    color[w] = color[u] ^ 1
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    side0 = {v for v, c in color.items() if c == 0}
    return side0, set(range(G.n)) - side0


@dataclass(frozen=True)
class SpectrumSummary:
    """Adjacency spectrum of a d-regular graph.

    ``eigenvalues`` holds the full spectrum sorted descending on the
    dense path (n <= 5000) and is None on the iterative path, where
    ``extremes`` = (rho1, rho2, rho_n) instead.  ``rho`` is rho2 for
    bipartite graphs and max(rho2, -rho_n) otherwise.
    """

    n: int
    d: int
    bipartite: bool
    rho: float
    eigenvalues: tuple | None = None
    extremes: tuple | None = None

    @property
    def rho1(self) -> float:
        return self.eigenvalues[0] if self.eigenvalues is not None else self.extremes[0]

    @property
    def rho2(self) -> float:
        return self.eigenvalues[1] if self.eigenvalues is not None else self.extremes[1]

    @property
    def rho_n(self) -> float:
        return self.eigenvalues[-1] if self.eigenvalues is not None else self.extremes[2]


def _require_regular(G: LabeledHypergraph) -> int:
    if G.m != 2:
        raise ValueError("spectral routines need a 2-uniform graph")
    if G.n < 2:
        raise ValueError("need at least 2 vertices")
    degs = {G.degree(v) for v in range(G.n)}
    if len(degs) != 1:
        raise ValueError(f"graph is not regular: degrees {sorted(degs)}")
    return degs.pop()


def spectrum(G: LabeledHypergraph) -> SpectrumSummary:
    """Eigenvalues of the adjacency matrix of a regular graph.

    Dense symmetric solve for n <= 5000; Lanczos iteration for the
    extreme triple (rho1, rho2, rho_n) above that, relative tolerance
    1e-8.  Raises ValueError on non-regular input and RuntimeError if
    the iteration does not converge.
    """
    d = _require_regular(G)
    n = G.n
    bip = _bipartition(G) is not None
    if n <= _DENSE_LIMIT:
        A = np.zeros((n, n))
        for u, v in G.edges:
            A[u, v] = A[v, u] = 1.0
        eig = np.linalg.eigvalsh(A)[::-1]
        eigenvalues = tuple(float(x) for x in eig)
        rho2, rho_n = eigenvalues[1], eigenvalues[-1]
        extremes = None
    else:
        us = [u for u, _ in G.edges]
        vs = [v for _, v in G.edges]
        data = np.ones(2 * len(us))
        A = sparse.csr_matrix((data, (us + vs, vs + us)), shape=(n, n))
        try:
            top = eigsh(A, k=2, which="LA", tol=1e-8, return_eigenvectors=False)
            bot = eigsh(A, k=1, which="SA", tol=1e-8, return_eigenvectors=False)
        except ArpackNoConvergence as exc:
            raise RuntimeError("eigenvalue iteration did not converge") from exc
        rho1, rho2 = sorted((float(x) for x in top), reverse=True)
        rho_n = float(bot[0])
        eigenvalues = None
        extremes = (rho1, rho2, rho_n)
    rho = rho2 if bip else max(rho2, -rho_n)
    return SpectrumSummary(
        n=n, d=d, bipartite=bip, rho=float(rho),
        eigenvalues=eigenvalues, extremes=extremes,
    )


def mixing_check(G: LabeledHypergraph, U, W, mode: str = "general") -> dict:
    """Certify the mixing inequality for vertex sets U, W.

    e(U, W) counts ordered adjacent pairs.  In ``general`` mode the
    expected count is (d/n)|U||W|; in ``bipartite`` mode it is
    (2d/n)|U||W| and U, W must lie in opposite classes of the
    bipartition.  Returns {"lhs", "bound", "ok"} with
    ok = lhs <= rho*sqrt(|U||W|) + 1e-9.
    """
    if mode not in ("general", "bipartite"):
        raise ValueError(f"unknown mode {mode!r}")
    summary = spectrum(G)
    n = G.n
    setU = set(U)
    setW = set(W)
    for v in setU | setW:
        if not (0 <= v < n):
            raise ValueError(f"vertex {v} out of range")
    if mode == "bipartite":
        sides = _bipartition(G)
        if sides is None:
            raise ValueError("bipartite mode needs a bipartite graph")
        s0, s1 = sides
        if not ((setU <= s0 and setW <= s1) or (setU <= s1 and setW <= s0)):
            raise ValueError("U and W must lie in opposite bipartition classes")
        expected = 2 * summary.d / n * len(setU) * len(setW)
        rho = summary.rho2
    else:
        expected = summary.d / n * len(setU) * len(setW)
        rho = max(summary.rho2, -summary.rho_n)
    e = sum(len(G.adj[u] & setW) for u in setU)
    lhs = abs(e - expected)
    bound = rho * math.sqrt(len(setU) * len(setW))
    return {"lhs": lhs, "bound": bound, "ok": lhs <= bound + 1e-9}


@dataclass
class GreedySplitTrace:
    """Execution record of greedy_split.

    ``iterations`` has one entry per growth pass with the max and
    histogram of the deficiency counts s_i at the start of the pass and
    the vertices added; ``seeds`` and ``patches`` record the other two
    phases.  ``advisories`` flags the asymptotic hypotheses (a < 1/3,
    rho <= 2 sqrt d) without enforcing them.
    """

    seeds: list = dc_field(default_factory=list)
    iterations: list = dc_field(default_factory=list)
    patches: list = dc_field(default_factory=list)
    final_part_sizes: list = dc_field(default_factory=list)
    stagnated: bool = False
    advisories: dict = dc_field(default_factory=dict)
    diagnostics: list = dc_field(default_factory=list)

    def iteration_records(self) -> list:
        return [
            {"iter": rec["iter"], "max_s": rec["max_s"], "added": rec["added"]}
            for rec in self.iterations
        ]

    def to_json_dict(self) -> dict:
        return {
            "seeds": list(self.seeds),
            "iterations": list(self.iterations),
            "patches": list(self.patches),
            "final_part_sizes": list(self.final_part_sizes),
            "stagnated": self.stagnated,
            "advisories": dict(self.advisories),
            "diagnostics": list(self.diagnostics),
        }


def _pattern_for_split(H) -> "forbidden.ForbiddenPattern":
    pattern = forbidden.parse_pattern(H) if isinstance(H, str) else H
    kind = pattern.kind
    if kind == "berge_cycle":
        raise ValueError("Berge patterns describe hypergraph hosts, not graphs")
    if kind == "complete_bipartite" and pattern.params[0] < 2:
        raise ValueError("pattern has degree-1 vertices")
    if kind == "explicit":
        deg: Counter = Counter()
        for e in pattern.edges:
            deg.update(e)
        if deg and min(deg.values()) < 2:
            raise ValueError("pattern has degree-1 vertices")
    return pattern


def greedy_split(G: LabeledHypergraph, m: int, H, sizes=None, seed=None):
    """Grow an m-part split of a regular H-free graph.

    Seeds every part with ``seed_size`` vertices pairwise at distance
    at least 3 (backtracking search), then repeatedly adds to each
    still-deficient part the unused vertex outside the part's distance-2
    ball covering the most parts it lacks an edge to, and finally
    attaches one fresh degree-one vertex per still-uncovered part pair
    (degree-one additions cannot create H, hence the precondition that
    H has no degree-one vertex).  On bipartite input, seeds come from
    the side of vertex 0 and growth vertices from the other side.

    ``sizes`` may override {"seed_size", "target_s", "max_iters"};
    defaults are seed_size = ceil(sqrt(n/m)), target_s = seed_size,
    max_iters = 4*seed_size.  ``seed`` randomizes tie-breaking only.

    Returns (augmented graph, partition, GreedySplitTrace).  Raises
    RuntimeError with diagnostics when seeding is infeasible.
    """
    pattern = _pattern_for_split(H)
    d = _require_regular(G)
    n = G.n
    if m < 2:
        raise ValueError("need at least 2 parts")
    sizes = dict(sizes or {})
    unknown = set(sizes) - {"seed_size", "target_s", "max_iters"}
    if unknown:
        raise ValueError(f"unknown sizes keys {sorted(unknown)}")
    seed_size = int(sizes.get("seed_size") or math.ceil(math.sqrt(n / m)))
    if seed_size < 1:
        raise ValueError("seed_size must be positive")
    target_s = sizes.get("target_s", seed_size)
    max_iters = int(sizes.get("max_iters", 4 * seed_size))
    if m * seed_size > n // 2:
        raise ValueError(
            f"m*seed_size = {m * seed_size} exceeds half the vertex count {n // 2}"
        )
    rng = random.Random(seed) if seed is not None else None

    sides = _bipartition(G)
    if sides is not None:
        side0, side1 = sides
        seed_pool = sorted(side0 if 0 in side0 else side1)
        grow_pool = sorted(side1 if 0 in side0 else side0)
    else:
        seed_pool = list(range(n))
        grow_pool = list(range(n))

    adj = G.adj
    trace = GreedySplitTrace()

    summary = None
    try:
        summary = spectrum(G)
    except RuntimeError as exc:
        trace.diagnostics.append(f"spectrum unavailable: {exc}")
    a_exp = math.log(d) / math.log(n) if d >= 2 else None
    trace.advisories = {
        "n": n,
        "d": d,
        "a": a_exp,
        "a_lt_one_third": (a_exp < 1 / 3) if a_exp is not None else None,
        "rho": summary.rho if summary is not None else None,
        "rho_le_two_sqrt_d": (
            summary.rho <= 2 * math.sqrt(d) + 1e-9 if summary is not None else None
        ),
    }

    placed = [None] * n
    parts: list = [[] for _ in range(m)]
    ball2: list = [set() for _ in range(m)]  # distance-<3 exclusion zone per part

    def ball_of(v):
        zone = {v} | adj[v]
        for u in adj[v]:
            zone |= adj[u]
        return zone

    # ---- step 2: backtracking seed placement
    total = m * seed_size
    iters: list = [None] * total
    undo: list = [None] * total
    iters[0] = iter(seed_pool)
    slot = 0
    budget = _SEED_NODE_BUDGET
    while 0 <= slot < total:
        i = slot // seed_size
        advanced = False
        for v in iters[slot]:
            if placed[v] is not None or v in ball2[i]:
                continue
            budget -= 1
            if budget < 0:
                raise RuntimeError(
                    f"seeding infeasible within {_SEED_NODE_BUDGET} search nodes: "
                    f"placed {slot} of {total} seeds (m={m}, seed_size={seed_size})"
                )
            placed[v] = i
            parts[i].append(v)
            added_zone = ball_of(v) - ball2[i]
            ball2[i] |= added_zone
            undo[slot] = (v, i, added_zone)
            slot += 1
            if slot < total:
                iters[slot] = iter(seed_pool)
            advanced = True
            break
        if not advanced:
            slot -= 1
            if slot >= 0:
                v, i, added_zone = undo[slot]
                placed[v] = None
                parts[i].pop()
                ball2[i] -= added_zone
    if slot < 0:
        raise RuntimeError(
            f"seeding infeasible: no placement of {seed_size} vertices per part "
            f"at pairwise distance >= 3 exists for m={m} "
            f"(pool size {len(seed_pool)})"
        )
    for i in range(m):
        for v in parts[i]:
            trace.seeds.append({"part": i, "vertex": v})

    # pair coverage flags from the seeds
    covered = [[False] * m for _ in range(m)]
    for i in range(m):
        for v in parts[i]:
            for w in adj[v]:
                j = placed[w]
                if j is not None and j != i:
                    covered[i][j] = covered[j][i] = True

    def s_of(i: int) -> int:
        row = covered[i]
        return sum(1 for j in range(m) if j != i and not row[j])

    def add_vertex(v: int, i: int) -> None:
        placed[v] = i
        parts[i].append(v)
        ball2[i] |= ball_of(v)
        for w in adj[v]:
            j = placed[w]
            if j is not None and j != i:
                covered[i][j] = covered[j][i] = True

    # ---- step 3: greedy growth
    it_count = 0
    while it_count < max_iters:
        s_list = [s_of(i) for i in range(m)]
        if all(s < target_s for s in s_list):
            break
        record = {
            "iter": it_count,
            "max_s": max(s_list),
            "s_histogram": {str(k): v for k, v in sorted(Counter(s_list).items())},
            "added": [],
        }
        for i in range(m):
            if s_of(i) < target_s:
                continue
            lacking = {j for j in range(m) if j != i and not covered[i][j]}
            if not lacking:
                continue
            best_hits = 0
            best: list = []
            for v in grow_pool:
                if placed[v] is not None or v in ball2[i]:
                    continue
                hits = len(
                    {placed[w] for w in adj[v] if placed[w] is not None} & lacking
                )
                if hits > best_hits:
                    best_hits = hits
                    best = [v]
                elif hits == best_hits and hits > 0:
                    best.append(v)
            if not best:
                continue
            v = best[0] if rng is None else rng.choice(best)
            add_vertex(v, i)
            record["added"].append({"part": i, "vertex": v})
        if not record["added"]:
            trace.stagnated = True
            trace.diagnostics.append(
                f"stagnation at iteration {it_count}: no vertex reduces any s_i; "
                "remaining pairs go to the patch step"
            )
            break
        trace.iterations.append(record)
        it_count += 1

    # ---- step 4: fresh degree-one patch vertices
    labels = list(G.vertices)
    existing = set(labels)
    edges = list(G.edges)
    counter = 0
    for i in range(m):
        for j in range(i + 1, m):
            if covered[i][j]:
                continue
            # attach to the least original vertex of the higher part
            w = min(v for v in parts[j] if v < n)
            while f"aug:{counter}" in existing:
                counter += 1
            label = f"aug:{counter}"
            existing.add(label)
            fresh = len(labels)
            labels.append(label)
            edges.append((w, fresh))
            parts[i].append(fresh)
            covered[i][j] = covered[j][i] = True
            trace.patches.append({"pair": [i, j], "vertex": fresh, "attached_to": w})

    G2 = LabeledHypergraph(2, labels, edges)
    P = SplitPartition(parts, max(len(part) for part in parts))
    trace.final_part_sizes = [len(part) for part in parts]
    report = verify_rk(G2, P)
    if not (report.completeness_ok and report.independence_ok):
        raise RuntimeError("internal error: greedy_split output failed verification")
    return G2, P, trace
