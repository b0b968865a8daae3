"""End-to-end acceptance gate: one test per shipped guarantee.

Each test certifies a finite instance of one headline capability and
pins its wall-clock budget.  Tolerances are exact integer equality
unless a float tolerance is written at the assert.
"""
from __future__ import annotations

import json
import math
import random
import time
from collections import deque
from fractions import Fraction
from itertools import combinations
from pathlib import Path

from splitforge import cli, forbidden, spectral
from splitforge.bounds import TuranEnvelope, min_k_lower
from splitforge.constructions import (
    build_design_split,
    build_property_B,
    build_wenger,
    design_catalog,
)
from splitforge.forbidden import check_pattern, parse_pattern
from splitforge.oracle import OracleQuery, exact_f
from splitforge.structures import LabeledHypergraph, verify_rk


def load(path: Path) -> dict:
    return json.loads(path.read_text(encoding="utf-8"))


def petersen() -> LabeledHypergraph:
    edges = (
        [(i, (i + 1) % 5) for i in range(5)]
        + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        + [(i, 5 + i) for i in range(5)]
    )
    return LabeledHypergraph(2, [f"v{i}" for i in range(10)], edges)


def complete_bipartite(a: int, b: int) -> LabeledHypergraph:
    labels = [f"a{i}" for i in range(a)] + [f"b{j}" for j in range(b)]
    edges = [(i, a + j) for i in range(a) for j in range(b)]
    return LabeledHypergraph(2, labels, edges)


def bipartition(G: LabeledHypergraph) -> tuple[list, list]:
    color = [-1] * G.n
    for root in range(G.n):
        if color[root] >= 0:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in G.adj[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    queue.append(w)
                else:
                    assert color[w] != color[u], "graph is not bipartite"
    return [v for v in range(G.n) if color[v] == 0], [v for v in range(G.n) if color[v] == 1]


def bfs_distance(G: LabeledHypergraph, src: int, dst: int) -> float:
    dist = {src: 0}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        if u == dst:
            return dist[u]
        for w in G.adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return math.inf


def component_sizes(G: LabeledHypergraph) -> list[int]:
    seen = [False] * G.n
    out = []
    for root in range(G.n):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        size = 0
        while queue:
            u = queue.popleft()
            size += 1
            for w in G.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        out.append(size)
    return out


def construct(tmp: Path, tag: str, *args: str, threads: int = 1) -> tuple[Path, Path]:
    g = tmp / f"{tag}_graph.json"
    p = tmp / f"{tag}_parts.json"
    rc = cli.main(
        ["construct", *args, "--out", str(g), "--partition", str(p),
         "--threads", str(threads)]
    )
    assert rc == 0, f"construct {tag} exited {rc}"
    return g, p


def verify_ok(g: Path, p: Path, *patterns: str) -> None:
    args = ["verify", "--graph", str(g), "--partition", str(p)]
    for pat in patterns:
        args += ["--forbid", pat]
    rc = cli.main(args)
    assert rc == 0, f"verify {patterns} on {g.name} exited {rc}"


# --------------------------------------------------------------- criteria


def test_c01_wenger_c6_split(tmp_path):
    for q in (3, 5, 9):
        t0 = time.perf_counter()
        g, p = construct(tmp_path, f"w2_{q}", "wenger", "--M", "2", "--q", str(q))
        verify_ok(g, p, "C_6")
        parts = load(p)["parts"]
        assert len(parts) == q * q
        assert max(len(part) for part in parts) == 2 * q
        assert time.perf_counter() - t0 < 60.0


def test_c02_wenger_c10_split(tmp_path):
    t0 = time.perf_counter()
    g, p = construct(tmp_path, "w4_3", "wenger", "--M", "4", "--q", "3")
    verify_ok(g, p, "C_10")
    parts = load(p)["parts"]
    assert len(parts) == 27
    assert max(len(part) for part in parts) == 18
    assert time.perf_counter() - t0 < 300.0


def test_c03_norm_quotient_split(tmp_path):
    t0 = time.perf_counter()
    for q, h, a, r_want in ((9, 4, 2, 18), (25, 6, 4, 100)):
        g, p = construct(
            tmp_path, f"nq_{q}", "norm-quotient", "--q", str(q), "--t", "2",
            "--d", "1", "--h", str(h), "--a", str(a), "--seed", "7",
        )
        verify_ok(g, p, "K_{2,2}")
        doc = load(p)
        parts = doc["parts"]
        stats = doc["patch_stats"]
        assert len(parts) == r_want
        k_eff = max(len(part) for part in parts)
        assert k_eff <= a + h + stats["max_patch_per_part"]
        assert stats["fresh_vertices"] >= 0 and stats["patch_edges"] >= 0
    assert time.perf_counter() - t0 < 300.0


def test_c04_theta_split(tmp_path):
    t0 = time.perf_counter()
    g, p = construct(tmp_path, "theta9", "theta", "--q", "9")
    parts = load(p)["parts"]
    assert len(parts) == 243
    assert {len(part) for part in parts} == {54}
    verify_ok(g, p, "theta_{3,4}")
    assert time.perf_counter() - t0 < 1800.0


def test_c05_berge_triple_split(tmp_path):
    for q, budget in ((9, 600.0), (25, 600.0)):
        t0 = time.perf_counter()
        g, p = construct(tmp_path, f"b3_{q}", "berge3", "--q", str(q))
        verify_ok(g, p, "bergeC_2", "bergeC_3", "bergeC_4")
        parts = load(p)["parts"]
        assert len(parts) == q
        assert max(len(part) for part in parts) == q - 1
        assert len(load(g)["edges"]) == math.comb(q, 3)
        assert time.perf_counter() - t0 < budget


def test_c06_design_splits():
    t0 = time.perf_counter()
    G, P = build_design_split(design_catalog("fano"), 2)
    rep = verify_rk(G, P)
    assert rep.completeness_ok and rep.independence_ok
    assert P.r == 7
    assert {len(part) for part in P.parts} == {3}
    assert max(component_sizes(G)) == 3

    G2, P2 = build_design_split(design_catalog("AG(2,3)"), 2)
    rep2 = verify_rk(G2, P2)
    assert rep2.completeness_ok and rep2.independence_ok
    assert P2.r == 9
    assert {len(part) for part in P2.parts} == {4}
    assert time.perf_counter() - t0 < 1.0


def test_c07_profile_splits():
    t0 = time.perf_counter()
    for r in (4, 6):
        for c in ((1, 1), (2, 1), (1, 1, 1)):
            m = sum(c)
            k = len(c)
            G, P = build_property_B(m, c, r)
            rep = verify_rk(G, P)
            assert rep.completeness_ok and rep.independence_ok
            assert P.r == r and P.declared_k == k
            assert {len(part) for part in P.parts} == {k}
            profile = [j for j, cnt in enumerate(c) for _ in range(cnt)]
            for e in G.edges:
                assert [v % k for v in e] == profile
    assert time.perf_counter() - t0 < 1.0


def test_c08_oracle_vs_bounds():
    t0 = time.perf_counter()
    C4 = parse_pattern("C_4")
    # the envelope constant must upper-bound the C4-free edge maximum at
    # every host size n = r*k reachable here (n <= 12): 0.58 n^{3/2} does
    env = TuranEnvelope(Fraction(29, 50), Fraction(3, 2), 2)
    for r, want in ((3, 1), (4, 2)):
        res = exact_f(OracleQuery(r=r, m=2, k_max=3, pattern=C4))
        assert res.status == "found"
        assert res.value == want
        assert res.value >= min_k_lower(r, 2, env)
        for comp in ((1, 1), (2,)):
            G, P = build_property_B(2, comp, r)
            if check_pattern(G, C4) is None:
                assert res.value <= len(comp)
    assert time.perf_counter() - t0 < 120.0


def test_c09_spectra_and_mixing():
    P = petersen()
    K33 = complete_bipartite(3, 3)
    assert abs(spectral.spectrum(P).rho - 2.0) <= 1e-6
    assert abs(spectral.spectrum(K33).rho2 - 0.0) <= 1e-6

    rng = random.Random(20260816)
    failures = 0
    for _ in range(1000):
        U = rng.sample(range(P.n), rng.randint(1, P.n))
        W = rng.sample(range(P.n), rng.randint(1, P.n))
        if not spectral.mixing_check(P, U, W)["ok"]:
            failures += 1
    for G in (K33, build_wenger(1, 3), build_wenger(2, 3)):
        side0, side1 = bipartition(G)
        for _ in range(1000):
            U = rng.sample(side0, rng.randint(1, len(side0)))
            W = rng.sample(side1, rng.randint(1, len(side1)))
            if not spectral.mixing_check(G, U, W, mode="bipartite")["ok"]:
                failures += 1
    assert failures == 0


def test_c10_greedy_split():
    t0 = time.perf_counter()
    G = build_wenger(1, 5)
    G2, P, trace = spectral.greedy_split(
        G, 8, "K_{2,2}", sizes={"seed_size": 2}, seed=42
    )
    rep = verify_rk(G2, P)
    assert rep.completeness_ok and rep.independence_ok
    assert check_pattern(G2, parse_pattern("K_{2,2}")) is None

    by_part: dict[int, list[int]] = {}
    for rec in trace.seeds:
        by_part.setdefault(rec["part"], []).append(rec["vertex"])
    assert sorted(by_part) == list(range(8))
    for vs in by_part.values():
        for u, w in combinations(vs, 2):
            assert bfs_distance(G, u, w) >= 3

    maxes = [rec["max_s"] for rec in trace.iterations]
    assert all(x >= y for x, y in zip(maxes, maxes[1:]))
    for rec in trace.patches:
        assert G2.degree(rec["vertex"]) == 1
    assert time.perf_counter() - t0 < 60.0


def test_c11_threads_determinism(tmp_path):
    recipes = [
        ("w2_3", ["wenger", "--M", "2", "--q", "3"]),
        ("w2_9", ["wenger", "--M", "2", "--q", "9"]),
        ("w4_3", ["wenger", "--M", "4", "--q", "3"]),
        ("nq_9", ["norm-quotient", "--q", "9", "--t", "2", "--d", "1",
                  "--h", "4", "--a", "2", "--seed", "7"]),
        ("nq_25", ["norm-quotient", "--q", "25", "--t", "2", "--d", "1",
                   "--h", "6", "--a", "4", "--seed", "7"]),
        ("theta9", ["theta", "--q", "9"]),
        ("b3_9", ["berge3", "--q", "9"]),
        ("b3_25", ["berge3", "--q", "25"]),
        ("fano", ["design", "--id", "fano"]),
        ("ag23", ["design", "--id", "AG(2,3)"]),
        ("pb", ["property-B", "--m", "3", "--c", "2,1", "--r", "6"]),
    ]
    for tag, args in recipes:
        docs = []
        for threads in (1, 4):
            g, p = construct(tmp_path, f"{tag}_t{threads}", *args, threads=threads)
            docs.append((load(g), load(p)))
        for one, four in zip(docs[0], docs[1]):
            assert one["provenance"]["payload_sha256"] == four["provenance"]["payload_sha256"]
            a, b = dict(one), dict(four)
            a.pop("provenance")
            b.pop("provenance")
            assert a == b

    # seeded pipelines with their own subcommands
    for threads in (1, 4):
        wg = tmp_path / f"w15_t{threads}_graph.json"
        rc = cli.main(
            ["construct", "wenger", "--M", "1", "--q", "5", "--out", str(wg),
             "--threads", str(threads)]
        )
        assert rc == 0
        rc = cli.main(
            ["partition-greedy", "--graph", str(wg), "--m", "8",
             "--forbid", "K_{2,2}", "--seed", "42", "--seed-size", "2",
             "--out-graph", str(tmp_path / f"gg_t{threads}.json"),
             "--out-partition", str(tmp_path / f"gp_t{threads}.json"),
             "--threads", str(threads)]
        )
        assert rc == 0
        rc = cli.main(
            ["oracle", "--r", "4", "--m", "2", "--k-max", "3", "--forbid", "C_4",
             "--out", str(tmp_path / f"or_t{threads}.json"),
             "--cert-graph", str(tmp_path / f"og_t{threads}.json"),
             "--cert-partition", str(tmp_path / f"op_t{threads}.json"),
             "--threads", str(threads)]
        )
        assert rc == 0
    for stem in ("gg", "gp", "or", "og", "op"):
        one = load(tmp_path / f"{stem}_t1.json")
        four = load(tmp_path / f"{stem}_t4.json")
        assert one["provenance"]["payload_sha256"] == four["provenance"]["payload_sha256"]
        one.pop("provenance")
        four.pop("provenance")
        assert one == four
