"""Hypergraph, partition, and certification data model.

A LabeledHypergraph is an m-uniform edge list over string-labeled
vertices; vertex indices, not labels, are the API currency.  A
SplitPartition carries r pairwise-disjoint parts plus the declared part
size cap, and verify_rk certifies whether the pair is rainbow complete:
for every m-subset of parts there is an edge meeting each chosen part
in exactly one vertex.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb

__all__ = [
    "BudgetExceededError",
    "LabeledHypergraph",
    "SplitPartition",
    "VerificationReport",
    "verify_rk",
    "property_B_check",
    "components",
    "max_component_size",
]


class BudgetExceededError(RuntimeError):
    """An exhaustive search hit its node budget before deciding."""


class LabeledHypergraph:
    """Immutable m-uniform hypergraph.

    Parameters
    ----------
    m : int
        Uniformity, at least 2.  m=2 is the ordinary graph case.
    vertices : sequence of str
        Labels in construction order; edges refer to their indices.
    edges : iterable of iterables of int
        Each edge must have exactly m distinct in-range vertices.
        Duplicate edges are rejected rather than merged, since the
        builders in this package never produce them intentionally.
    """

    __slots__ = ("m", "vertices", "edges", "__dict__")

    def __init__(self, m: int, vertices, edges) -> None:
        if m < 2:
            raise ValueError(f"uniformity must be >= 2, got {m}")
        self.m = m
        self.vertices = tuple(str(v) for v in vertices)
        n = len(self.vertices)
        norm = []
        seen = set()
        for e in edges:
            e = tuple(sorted(e))
            if len(e) != m or len(set(e)) != m:
                raise ValueError(f"edge {e} does not have {m} distinct vertices")
            if e[0] < 0 or e[-1] >= n:
                raise ValueError(f"edge {e} references a vertex outside [0, {n})")
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        self.edges = tuple(norm)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    @cached_property
    def adj(self) -> tuple:
        """Neighbor sets: vertices sharing at least one edge."""
        out = [set() for _ in range(self.n)]
        for e in self.edges:
            for u in e:
                for v in e:
                    if u != v:
                        out[u].add(v)
        return tuple(out)

    @cached_property
    def incident(self) -> tuple:
        """Edge-index lists per vertex."""
        out = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            for v in e:
                out[v].append(i)
        return tuple(tuple(lst) for lst in out)

    def degree(self, v: int) -> int:
        return len(self.incident[v])

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "LabeledHypergraph":
        return cls(d["m"], d["vertices"], d["edges"])

    def __repr__(self) -> str:
        return f"LabeledHypergraph(m={self.m}, n={self.n}, edges={len(self.edges)})"


class SplitPartition:
    """Ordered list of disjoint vertex-index parts with a declared cap."""

    __slots__ = ("parts", "declared_k")

    def __init__(self, parts, declared_k: int) -> None:
        norm = []
        seen = set()
        for part in parts:
            part = tuple(sorted(part))
            for v in part:
                if v < 0:
                    raise ValueError(f"negative vertex index {v}")
                if v in seen:
                    raise ValueError(f"vertex {v} appears in two parts")
                seen.add(v)
            if len(part) > declared_k:
                raise ValueError(
                    f"part of size {len(part)} exceeds declared k={declared_k}"
                )
            norm.append(part)
        self.parts = tuple(norm)
        self.declared_k = declared_k

    @property
    def r(self) -> int:
        return len(self.parts)

    def to_json_dict(self) -> dict:
        return {"k": self.declared_k, "parts": [list(p) for p in self.parts]}

    @classmethod
    def from_json_dict(cls, d: dict) -> "SplitPartition":
        return cls(d["parts"], d["k"])

    def __repr__(self) -> str:
        return f"SplitPartition(r={self.r}, k={self.declared_k})"


@dataclass
class VerificationReport:
    r: int
    k_effective: int
    completeness_ok: bool
    missing_tuples: list
    independence_ok: bool
    forbidden_witness: dict | None = None
    wall_time: float = 0.0

    def to_json_dict(self) -> dict:
        return {
            "r": self.r,
            "k_effective": self.k_effective,
            "completeness_ok": self.completeness_ok,
            "missing_tuples": [list(t) for t in self.missing_tuples],
            "independence_ok": self.independence_ok,
            "forbidden_witness": self.forbidden_witness,
            "wall_time": self.wall_time,
        }


def verify_rk(G: LabeledHypergraph, P: SplitPartition) -> VerificationReport:
    """Certify that (G, P) is an (r, k)-hypergraph.

    Every edge contributes the tuple of parts it meets; an m-subset of
    parts is covered when some edge meets each of the m parts in
    exactly one vertex (for an m-uniform edge that means its vertices
    lie in m distinct parts, all of them assigned).  Vertices outside
    every part are allowed and such edges never cover a tuple.

    Returns
    -------
    VerificationReport
        With r, k_effective = max part size, the sorted list of
        uncovered part m-subsets, and the independence flag (no edge
        entirely inside one part).
    """
    t0 = time.monotonic()
    n = G.n
    part_of = [-1] * n
    for i, part in enumerate(P.parts):
        for v in part:
            if v >= n:
                raise ValueError(f"partition references vertex {v}, graph has {n}")
            part_of[v] = i
    r, m = P.r, G.m
    k_eff = max((len(p) for p in P.parts), default=0)
    covered = set()
    independent = True
    for e in G.edges:
        ps = sorted(part_of[v] for v in e)
        if ps[0] == ps[-1] and ps[0] != -1:
            independent = False
        if ps[0] != -1 and all(ps[i] < ps[i + 1] for i in range(m - 1)):
            covered.add(tuple(ps))
    if len(covered) == comb(r, m):
        missing = []
    else:
        missing = [c for c in combinations(range(r), m) if c not in covered]
    return VerificationReport(
        r=r,
        k_effective=k_eff,
        completeness_ok=not missing,
        missing_tuples=missing,
        independence_ok=independent,
        wall_time=time.monotonic() - t0,
    )


def property_B_check(H: LabeledHypergraph, c, budget: int = 1_000_000) -> bool:
    """Decide whether H admits a coloring with color profile c.

    A k-coloring has profile c = (c_1, ..., c_k) when every edge
    carries exactly c_i vertices of color i; profile (1, 1) on a graph
    is bipartiteness.  Exhaustive backtracking over edge-connected
    vertices in BFS order, so isolated vertices cost nothing.

    Raises
    ------
    BudgetExceededError
        When the search is cut off before a decision; never guesses.
    """
    c = tuple(int(x) for x in c)
    if len(c) < 2:
        raise ValueError("color profile needs at least two colors")
    if any(x <= 0 for x in c):
        raise ValueError(f"color profile must be positive, got {c}")
    if sum(c) != H.m:
        raise ValueError(f"profile {c} sums to {sum(c)}, uniformity is {H.m}")
    if H.n > 24:
        raise ValueError(f"{H.n} vertices exceeds the exhaustive limit of 24")
    k = len(c)
    incident = H.incident
    order = []
    seen = [False] * H.n
    for s in range(H.n):
        if seen[s] or not incident[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in H.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    counts = [[0] * k for _ in H.edges]
    nodes = 0

    def dfs(pos: int) -> bool:
        nonlocal nodes
        if pos == len(order):
            return True
        v = order[pos]
        for col in range(k):
            nodes += 1
            if nodes > budget:
                raise BudgetExceededError(
                    f"property B check undecided at budget ({budget} nodes)"
                )
            ok = True
            touched = []
            for ei in incident[v]:
                counts[ei][col] += 1
                touched.append(ei)
                if counts[ei][col] > c[col]:
                    ok = False
                    break
            if ok and dfs(pos + 1):
                return True
            for ei in touched:
                counts[ei][col] -= 1
        return False

    return dfs(0)


def components(G: LabeledHypergraph) -> list:
    """Connected components (vertices share a component when they share
    an edge), as sorted index lists ordered by least vertex."""
    parent = list(range(G.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in G.edges:
        r0 = find(e[0])
        for v in e[1:]:
            rv = find(v)
            if rv != r0:
                parent[rv] = r0
    groups = {}
    for v in range(G.n):
        groups.setdefault(find(v), []).append(v)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def max_component_size(G: LabeledHypergraph) -> int:
    if G.n == 0:
        return 0
    return max(len(comp) for comp in components(G))
