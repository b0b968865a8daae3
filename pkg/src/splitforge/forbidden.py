"""Exact forbidden-subgraph detection for graphs and uniform hypergraphs.

Deciders cover complete bipartite graphs K_{s,t}, cycles of a prescribed
length (plus girth), theta graphs (two endpoints joined by K internally
disjoint paths of equal length), short Berge cycles in uniform
hypergraphs, and arbitrary explicit patterns on at most 10 vertices.

All deciders are exact and deterministic. When a copy of the pattern
exists, the first witness in the documented search order is returned as

    {"pattern": <string>, "vertices": [...], "edges": [...]}

with vertices given as integer indices into the host graph. Witnesses
are re-checked edge by edge against the host before being returned;
`None` means the pattern is absent, never "gave up".
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy import sparse

from .structures import LabeledHypergraph

_KINDS = ("complete_bipartite", "cycle", "theta", "berge_cycle", "explicit")

_KST_RE = re.compile(r"^K_\{(\d+),(\d+)\}$")
_CYCLE_RE = re.compile(r"^C_(?:\{(\d+)\}|(\d+))$")
_THETA_RE = re.compile(r"^theta_\{(\d+),(\d+)\}$")
_BERGE_RE = re.compile(r"^bergeC_(\d+)$")

_EXPLICIT_MAX_VERTICES = 10


@dataclass(frozen=True)
class ForbiddenPattern:
    """A forbidden pattern, either named or given as an explicit edge list.

    Parameters
    ----------
    kind:
        One of ``complete_bipartite``, ``cycle``, ``theta``,
        ``berge_cycle``, ``explicit``.
    params:
        Numeric parameters: (s, t) with s <= t, (length,), (K, length),
        (length,), or () for explicit patterns.
    edges:
        Edge list for ``explicit`` patterns, ignored otherwise.
    """

    kind: str
    params: tuple
    edges: tuple = ()

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown pattern kind {self.kind!r}")
        p = self.params
        if self.kind == "complete_bipartite":
            if len(p) != 2 or not (1 <= p[0] <= p[1]):
                raise ValueError(f"bad K_(s,t) parameters {p}")
        elif self.kind == "cycle":
            if len(p) != 1 or p[0] < 3:
                raise ValueError(f"cycle length must be >= 3, got {p}")
        elif self.kind == "theta":
            if len(p) != 2 or p[0] < 2 or p[1] < 2:
                raise ValueError(f"theta needs K >= 2 and length >= 2, got {p}")
        elif self.kind == "berge_cycle":
            if len(p) != 1 or p[0] not in (2, 3, 4):
                raise ValueError(f"Berge cycle length must be 2, 3 or 4, got {p}")
        else:
            if not self.edges:
                raise ValueError("explicit pattern needs a nonempty edge list")
            verts = {v for e in self.edges for v in e}
            if len(verts) > _EXPLICIT_MAX_VERTICES:
                raise ValueError(
                    f"explicit patterns are limited to {_EXPLICIT_MAX_VERTICES} vertices"
                )

    def spec_string(self) -> str:
        if self.kind == "complete_bipartite":
            return "K_{%d,%d}" % self.params
        if self.kind == "cycle":
            return "C_{%d}" % self.params
        if self.kind == "theta":
            return "theta_{%d,%d}" % self.params
        if self.kind == "berge_cycle":
            return "bergeC_%d" % self.params
        return "explicit"


def parse_pattern(text: str) -> ForbiddenPattern:
    """Parse a pattern string such as ``K_{2,2}``, ``C_6``, ``C_{10}``,
    ``theta_{3,4}`` or ``bergeC_2``.

    K_(s,t) parameters are normalised so that s <= t.
    """
    m = _KST_RE.match(text)
    if m:
        s, t = sorted((int(m.group(1)), int(m.group(2))))
        return ForbiddenPattern("complete_bipartite", (s, t))
    m = _CYCLE_RE.match(text)
    if m:
        length = int(m.group(1) or m.group(2))
        return ForbiddenPattern("cycle", (length,))
    m = _THETA_RE.match(text)
    if m:
        return ForbiddenPattern("theta", (int(m.group(1)), int(m.group(2))))
    m = _BERGE_RE.match(text)
    if m:
        return ForbiddenPattern("berge_cycle", (int(m.group(1)),))
    raise ValueError(f"unrecognised pattern string {text!r}")


# --------------------------------------------------------------- helpers


def _require_graph(G: LabeledHypergraph):
    if G.m != 2:
        raise ValueError(f"this decider needs a 2-uniform graph, got m={G.m}")


def _emit(G: LabeledHypergraph, pattern: str, vertices, edges) -> dict:
    # final gate: every witness edge must exist in the host
    for e in edges:
        if tuple(sorted(e)) not in G.edge_set:
            raise RuntimeError(
                f"internal error: witness edge {tuple(e)} not present in host"
            )
    return {
        "pattern": pattern,
        "vertices": [int(v) for v in vertices],
        "edges": [sorted(int(v) for v in e) for e in edges],
    }


def _bipartition(G: LabeledHypergraph):
    """2-colour G by BFS; return the colour array or None if an odd cycle
    obstructs."""
    color = [-1] * G.n
    adj = G.adj
    for s in range(G.n):
        if color[s] != -1:
            continue
        color[s] = 0
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                cu = color[u]
                for w in adj[u]:
                    if color[w] == -1:
                        color[w] = 1 - cu
                        nxt.append(w)
                    elif color[w] == cu:
                        return None
            frontier = nxt
    return color


def _paths_exact(G: LabeledHypergraph, u: int, v: int, length: int):
    """All simple u-v paths with exactly `length` edges, in lexicographic
    order of the vertex sequence."""
    sadj = [sorted(a) for a in G.adj]
    out = []
    path = [u]

    def dfs(x, depth):
        if depth == length:
            if x == v:
                out.append(tuple(path))
            return
        if x == v:
            return
        for y in sadj[x]:
            if y in path:
                continue
            path.append(y)
            dfs(y, depth + 1)
            path.pop()

    dfs(u, 0)
    return out


def _pack_disjoint(paths, K: int):
    """Pick K of the given u-v paths with pairwise disjoint interiors.

    Exact: greedy first, then a complete include/exclude search. Paths
    with identical interiors are collapsed (they can never coexist).
    Returns the chosen paths or None.
    """
    items = []
    seen = set()
    for p in paths:
        key = frozenset(p[1:-1])
        if key not in seen:
            seen.add(key)
            items.append((key, p))
    chosen, used = [], set()
    for key, p in items:
        if used & key:
            continue
        chosen.append(p)
        used |= key
        if len(chosen) == K:
            return chosen
    if len(items) < K:
        return None

    def dfs(i, acc, used):
        if len(acc) == K:
            return acc
        while i < len(items) and len(acc) + (len(items) - i) >= K:
            key, p = items[i]
            i += 1
            if not (used & key):
                r = dfs(i, acc + [p], used | key)
                if r is not None:
                    return r
        return None

    return dfs(0, [], frozenset())


# ---------------------------------------------------------------- K_{s,t}


def contains_kst(G: LabeledHypergraph, s: int, t: int):
    """Find a K_{s,t} subgraph (s hub vertices totally joined to t others).

    Search order: for s = 2 the codegree counter scans vertices in
    ascending order and reports the first hub pair whose common
    neighbourhood reaches size t; for larger s, hub sets are explored
    in ascending lexicographic order with intersection pruning.

    Returns a witness whose vertex list is the s hubs followed by the
    t leaves, or None.
    """
    _require_graph(G)
    if not (1 <= s <= t):
        raise ValueError(f"need 1 <= s <= t, got ({s}, {t})")
    adj = G.adj
    pat = "K_{%d,%d}" % (s, t)

    if s == 1:
        for v in range(G.n):
            if G.degree(v) >= t:
                leaves = sorted(adj[v])[:t]
                return _emit(G, pat, [v] + leaves, [(v, x) for x in leaves])
        return None

    if s == 2:
        counts: dict[tuple[int, int], list[int]] = {}
        for w in range(G.n):
            nb = sorted(adj[w])
            for i in range(len(nb)):
                for j in range(i + 1, len(nb)):
                    key = (nb[i], nb[j])
                    lst = counts.setdefault(key, [])
                    lst.append(w)
                    if len(lst) == t:
                        hubs = list(key)
                        edges = [(h, x) for h in hubs for x in lst]
                        return _emit(G, pat, hubs + lst, edges)
        return None

    cand = [v for v in range(G.n) if len(adj[v]) >= t]

    def dfs(start, hubs, common):
        if len(hubs) == s:
            leaves = sorted(common)[:t]
            return hubs, leaves
        for ii in range(start, len(cand)):
            v = cand[ii]
            if len(cand) - ii < s - len(hubs):
                break
            newc = adj[v] if not hubs else common & adj[v]
            if len(newc) >= t:
                r = dfs(ii + 1, hubs + [v], newc)
                if r is not None:
                    return r
        return None

    found = dfs(0, [], set())
    if found is None:
        return None
    hubs, leaves = found
    edges = [(h, x) for h in hubs for x in leaves]
    return _emit(G, pat, list(hubs) + leaves, edges)


# ----------------------------------------------------------------- cycles


def contains_cycle(G: LabeledHypergraph, length: int):
    """Find a cycle with exactly `length` vertices.

    Works root by root in ascending order; for root r only cycles whose
    minimum vertex is r are considered, assembled from two half-paths
    that meet in the middle (for odd lengths the halves are joined
    across an edge). The returned vertex list is the cycle in traversal
    order, oriented so that its second entry is smaller than its last.
    """
    _require_graph(G)
    if length < 3:
        raise ValueError(f"cycle length must be >= 3, got {length}")
    if length > G.n:
        return None
    sadj = [sorted(a) for a in G.adj]
    half = length // 2
    pat = "C_{%d}" % length

    for root in range(G.n):
        buckets: dict[int, list[tuple]] = {}
        path = [root]

        def dfs(x, depth):
            if depth == half:
                buckets.setdefault(x, []).append(tuple(path))
                return
            for y in sadj[x]:
                if y <= root or y in path:
                    continue
                path.append(y)
                dfs(y, depth + 1)
                path.pop()

        dfs(root, 0)
        if length % 2 == 0:
            for w in sorted(buckets):
                lst = buckets[w]
                for i in range(len(lst)):
                    left = set(lst[i][1:-1])
                    for j in range(i + 1, len(lst)):
                        if left & set(lst[j][1:-1]):
                            continue
                        cyc = list(lst[i]) + list(reversed(lst[j][1:-1]))
                        return _finish_cycle(G, pat, cyc)
        else:
            es = G.edge_set
            for x in sorted(buckets):
                for y in sorted(buckets):
                    if y <= x or (x, y) not in es:
                        continue
                    for p1 in buckets[x]:
                        tail1 = set(p1[1:])
                        for p2 in buckets[y]:
                            if tail1 & set(p2[1:]):
                                continue
                            cyc = list(p1) + list(reversed(p2[1:]))
                            return _finish_cycle(G, pat, cyc)
    return None


def _finish_cycle(G, pat, cyc):
    if cyc[1] > cyc[-1]:
        cyc = [cyc[0]] + cyc[1:][::-1]
    edges = [(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))]
    return _emit(G, pat, cyc, edges)


def girth(G: LabeledHypergraph):
    """Length of a shortest cycle, or math.inf for a forest.

    Runs one breadth-first search per root; the first non-tree edge seen
    from root r closes a cycle of length dist(u) + dist(w) + 1, and the
    minimum of these estimates over all roots is exact.
    """
    _require_graph(G)
    best = math.inf
    adj = G.adj
    for root in range(G.n):
        dist = {root: 0}
        parent = {root: -1}
        frontier = [root]
        depth = 0
        while frontier:
            if 2 * depth >= best:
                break
            nxt = []
            for u in frontier:
                for w in adj[u]:
                    if w == parent[u]:
                        continue
                    if w in dist:
                        cand = dist[u] + dist[w] + 1
                        if cand < best:
                            best = cand
                    else:
                        dist[w] = depth + 1
                        parent[w] = u
                        nxt.append(w)
            frontier = nxt
            depth += 1
    return best


# ------------------------------------------------------------------ theta


def contains_theta(G: LabeledHypergraph, K: int, length: int,
                   memory_budget: int = 1_500_000_000):
    """Find a theta graph: K internally disjoint paths of exactly
    `length` edges between two common endpoints.

    K = 2 delegates to `contains_cycle` (the pattern is a 2*length
    cycle). For length 4 on a bipartite host whose dense same-side
    matrices fit in `memory_budget` bytes, candidate endpoint pairs are
    prefiltered by the exact 4-path count

        paths4 = C@C - (deg_u + deg_v) * C - M diag(deg - 2) M^T,  C = M M^T,

    computed in float32 (exact here: all counts stay far below 2**24);
    only pairs with at least K paths are handed to the path enumerator
    and an exact disjoint-packing search. All other cases enumerate
    paths root by root, which is exact but slower on large hosts.
    """
    _require_graph(G)
    if K < 2 or length < 2:
        raise ValueError(f"theta needs K >= 2 and length >= 2, got ({K}, {length})")
    pat = "theta_{%d,%d}" % (K, length)
    if K == 2:
        w = contains_cycle(G, 2 * length)
        if w is None:
            return None
        return {"pattern": pat, "vertices": w["vertices"], "edges": w["edges"]}
    if not G.edge_set:
        return None
    if length == 4:
        color = _bipartition(G)
        if color is not None:
            sides = ([v for v in range(G.n) if color[v] == 0],
                     [v for v in range(G.n) if color[v] == 1])
            fits = all(12 * len(side) ** 2 <= memory_budget for side in sides)
            if fits:
                return _theta4_bipartite(G, K, sides, pat)
    return _theta_generic(G, K, length, pat)


def _theta4_bipartite(G, K, sides, pat):
    X, Y = sides
    posX = {v: i for i, v in enumerate(X)}
    posY = {v: i for i, v in enumerate(Y)}
    rows, cols = [], []
    for (a, b) in G.edge_set:
        if a in posX:
            rows.append(posX[a])
            cols.append(posY[b])
        else:
            rows.append(posX[b])
            cols.append(posY[a])
    M = sparse.csr_matrix(
        (np.ones(len(rows), dtype=np.float32), (rows, cols)),
        shape=(len(X), len(Y)),
    )
    for side_verts, Ms in ((X, M), (Y, M.T.tocsr())):
        if len(side_verts) < 2:
            continue
        hit = _theta4_side(G, K, side_verts, Ms, pat)
        if hit is not None:
            return hit
    return None


def _theta4_side(G, K, side_verts, Ms, pat):
    degS = np.asarray(Ms.sum(axis=1)).ravel()
    degO = np.asarray(Ms.sum(axis=0)).ravel()
    C = np.asarray((Ms @ Ms.T).todense(), dtype=np.float32)
    W = C @ C
    W -= degS[:, None] * C
    W -= degS[None, :] * C
    corr = (Ms @ sparse.diags(degO - 2.0) @ Ms.T).tocoo()
    W[corr.row, corr.col] -= corr.data.astype(np.float32)
    np.fill_diagonal(W, 0.0)
    cand = np.argwhere(np.triu(W >= K, k=1))
    for i, j in cand:
        u, v = side_verts[int(i)], side_verts[int(j)]
        paths = _paths_exact(G, u, v, 4)
        chosen = _pack_disjoint(paths, K)
        if chosen is not None:
            return _theta_witness(G, pat, u, v, chosen)
    return None


def _theta_generic(G, K, length, pat):
    sadj = [sorted(a) for a in G.adj]
    for u in range(G.n):
        buckets: dict[int, list[tuple]] = {}
        path = [u]

        def dfs(x, depth):
            if depth == length:
                if x > u:
                    buckets.setdefault(x, []).append(tuple(path))
                return
            for y in sadj[x]:
                if y in path:
                    continue
                path.append(y)
                dfs(y, depth + 1)
                path.pop()

        dfs(u, 0)
        for v in sorted(buckets):
            chosen = _pack_disjoint(buckets[v], K)
            if chosen is not None:
                return _theta_witness(G, pat, u, v, chosen)
    return None


def _theta_witness(G, pat, u, v, chosen):
    vertices = [u, v]
    edges = []
    for p in chosen:
        vertices.extend(p[1:-1])
        edges.extend(zip(p, p[1:]))
    return _emit(G, pat, vertices, edges)


# ------------------------------------------------------------ Berge cycles


def contains_berge_cycle(Hy: LabeledHypergraph, length: int):
    """Find a Berge cycle of the given length (2, 3 or 4): a core cycle
    v_1 .. v_l together with l distinct hyperedges e_i covering the
    consecutive pairs {v_i, v_{i+1}}.

    Length 2 scans vertex pairs for two covering hyperedges. Lengths 3
    and 4 enumerate core cycles in the shadow graph (pairs covered by
    some hyperedge) in ascending order and decide the edge assignment by
    a system-of-distinct-representatives search.
    """
    if length not in (2, 3, 4):
        raise ValueError(f"Berge cycle length must be 2, 3 or 4, got {length}")
    if Hy.m < 3:
        raise ValueError("Berge cycle detection expects a hypergraph with m >= 3")
    pat = "bergeC_%d" % length
    pair2edges: dict[tuple[int, int], list[int]] = {}
    for ei, e in enumerate(Hy.edges):
        for a, b in combinations(e, 2):
            pair2edges.setdefault((a, b), []).append(ei)

    if length == 2:
        for pair in sorted(pair2edges):
            lst = pair2edges[pair]
            if len(lst) >= 2:
                es = [Hy.edges[lst[0]], Hy.edges[lst[1]]]
                return _emit(Hy, pat, list(pair), es)
        return None

    sadj: dict[int, set[int]] = {}
    for a, b in pair2edges:
        sadj.setdefault(a, set()).add(b)
        sadj.setdefault(b, set()).add(a)

    if length == 3:
        for a, b in sorted(pair2edges):
            common = sadj[a] & sadj[b]
            for c in sorted(common):
                if c <= b:
                    continue
                sdr = _distinct_representatives(
                    [pair2edges[(a, b)], pair2edges[(b, c)], pair2edges[(a, c)]]
                )
                if sdr is not None:
                    es = [Hy.edges[i] for i in sdr]
                    return _emit(Hy, pat, [a, b, c], es)
        return None

    # length 4: enumerate by the diagonal (a, c) with a the minimum of the
    # core; mids b < d come from the shadow common neighbourhood
    for a in sorted(sadj):
        mids_by_c: dict[int, list[int]] = {}
        for b in sorted(sadj[a]):
            if b <= a:
                continue
            for c in sadj[b]:
                if c > a:
                    mids_by_c.setdefault(c, []).append(b)
        for c in sorted(mids_by_c):
            ms = mids_by_c[c]
            for i in range(len(ms)):
                for j in range(i + 1, len(ms)):
                    b, d = ms[i], ms[j]
                    sdr = _distinct_representatives(
                        [
                            pair2edges[tuple(sorted((a, b)))],
                            pair2edges[tuple(sorted((b, c)))],
                            pair2edges[tuple(sorted((c, d)))],
                            pair2edges[tuple(sorted((d, a)))],
                        ]
                    )
                    if sdr is not None:
                        es = [Hy.edges[i_] for i_ in sdr]
                        return _emit(Hy, pat, [a, b, c, d], es)
    return None


def _distinct_representatives(cand_lists):
    """Assign a distinct element to every slot, backtracking over slots in
    order of increasing candidate count. Returns the assignment in slot
    order or None."""
    order = sorted(range(len(cand_lists)), key=lambda i: (len(cand_lists[i]), i))
    chosen: dict[int, int] = {}

    def dfs(k):
        if k == len(order):
            return True
        slot = order[k]
        for e in cand_lists[slot]:
            if e not in chosen.values():
                chosen[slot] = e
                if dfs(k + 1):
                    return True
                del chosen[slot]
        return False

    if dfs(0):
        return [chosen[i] for i in range(len(cand_lists))]
    return None


# -------------------------------------------------------- explicit pattern


def contains_explicit(G: LabeledHypergraph, pattern_edges):
    """Find an injective embedding of an explicit pattern (subgraph
    containment, not induced). Patterns are limited to 10 vertices;
    edge arity must match the host.

    Pattern vertices are matched in BFS order from the highest-degree
    pattern vertex, candidates tried in ascending host order with a
    degree cutoff.
    """
    edges = []
    for e in pattern_edges:
        t = tuple(sorted(e))
        if len(set(t)) != len(t):
            raise ValueError(f"pattern edge {e} repeats a vertex")
        if len(t) != G.m:
            raise ValueError(
                f"pattern edge {e} has arity {len(t)}, host is {G.m}-uniform"
            )
        edges.append(t)
    if not edges:
        raise ValueError("explicit pattern needs a nonempty edge list")
    pverts = sorted({v for e in edges for v in e})
    if len(pverts) > _EXPLICIT_MAX_VERTICES:
        raise ValueError(
            f"explicit patterns are limited to {_EXPLICIT_MAX_VERTICES} vertices"
        )

    pdeg = {v: 0 for v in pverts}
    for e in edges:
        for v in e:
            pdeg[v] += 1

    # BFS order over the pattern, restarting per component
    padj: dict[int, set[int]] = {v: set() for v in pverts}
    for e in edges:
        for a in e:
            for b in e:
                if a != b:
                    padj[a].add(b)
    order = []
    placed = set()
    remaining = sorted(pverts, key=lambda v: (-pdeg[v], v))
    for start in remaining:
        if start in placed:
            continue
        queue = [start]
        placed.add(start)
        while queue:
            x = queue.pop(0)
            order.append(x)
            for y in sorted(padj[x]):
                if y not in placed:
                    placed.add(y)
                    queue.append(y)

    # pattern edges become checkable once their last vertex is placed
    rank = {v: i for i, v in enumerate(order)}
    checks: list[list[tuple]] = [[] for _ in order]
    for e in edges:
        checks[max(rank[v] for v in e)].append(e)

    es = G.edge_set
    phi: dict[int, int] = {}
    used: set[int] = set()

    def dfs(i):
        if i == len(order):
            return True
        pv = order[i]
        for g in range(G.n):
            if g in used or G.degree(g) < pdeg[pv]:
                continue
            phi[pv] = g
            used.add(g)
            if all(
                tuple(sorted(phi[x] for x in e)) in es for e in checks[i]
            ) and dfs(i + 1):
                return True
            del phi[pv]
            used.remove(g)
        return False

    if not dfs(0):
        return None
    mapped = [tuple(sorted(phi[x] for x in e)) for e in edges]
    return _emit(G, "explicit", [phi[v] for v in pverts], mapped)


# -------------------------------------------------------------- dispatcher


def check_pattern(G: LabeledHypergraph, pattern):
    """Dispatch a ForbiddenPattern (or pattern string) to its decider.

    Berge patterns need a hypergraph with m >= 3; all other patterns
    need a 2-uniform host.
    """
    if isinstance(pattern, str):
        pattern = parse_pattern(pattern)
    if pattern.kind == "complete_bipartite":
        return contains_kst(G, *pattern.params)
    if pattern.kind == "cycle":
        return contains_cycle(G, *pattern.params)
    if pattern.kind == "theta":
        return contains_theta(G, *pattern.params)
    if pattern.kind == "berge_cycle":
        return contains_berge_cycle(G, *pattern.params)
    return contains_explicit(G, pattern.edges)
