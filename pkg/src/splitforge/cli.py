"""Command-line interface: reproducible construct/verify/analyse runs.

Every command writes UTF-8 JSON.  The result fields sit at the top level
of the document and a run manifest sits next to them under "provenance";
the manifest carries the command, parameters, seed, thread count, tool
version, input digests, a sha256 of the canonical payload (the document
minus the provenance key) and the wall time.  Repeated runs with the same
parameters and seed produce byte-identical payloads; only the manifest's
wall time may differ.

Exit codes: 0 success (including an "exhausted" oracle verdict), 1
unexpected internal failure, 2 invalid parameters or unreadable input,
3 split incomplete or not constructible, 4 forbidden pattern found,
5 budget exhausted.  Incompleteness takes precedence over a forbidden
witness when both apply.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import (
    TuranEnvelope,
    admissible_pair_for,
    berge_path_k_lb,
    k2d_upper_coeff,
    min_k_lower,
    min_k_lower_relaxed,
    small_d_table,
    tree_bound,
)
from .constructions import (
    build_berge3,
    build_design_split,
    build_norm_quotient,
    build_property_B,
    build_theta,
    build_wenger,
    design_catalog,
    partition_norm_quotient,
    partition_wenger,
)
from .forbidden import parse_pattern, check_pattern
from .oracle import OracleQuery, exact_f
from .spectral import greedy_split, mixing_check, spectrum
from .structures import (
    BudgetExceededError,
    LabeledHypergraph,
    SplitPartition,
    verify_rk,
)

_RNG_NAME = "python-random-mt19937"


# -- JSON plumbing -----------------------------------------------------------


def _canonical(payload: dict) -> bytes:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode("utf-8")


def _emit(payload: dict, manifest: dict, out: str | None) -> None:
    doc = dict(payload)
    manifest = dict(manifest)
    manifest["payload_sha256"] = hashlib.sha256(_canonical(payload)).hexdigest()
    doc["provenance"] = manifest
    text = json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _read_doc(path: str) -> tuple[dict, str]:
    raw = Path(path).read_bytes()
    return json.loads(raw.decode("utf-8")), "sha256:" + hashlib.sha256(raw).hexdigest()


def _load_graph(path: str, inputs: dict) -> LabeledHypergraph:
    doc, digest = _read_doc(path)
    inputs[path] = digest
    return LabeledHypergraph.from_json_dict(doc)

def _load_partition(path: str, inputs: dict) -> SplitPartition:
    doc, digest = _read_doc(path)
    inputs[path] = digest
    return SplitPartition.from_json_dict(doc)


class _Run:
    """Collects manifest ingredients while a command executes."""

    def __init__(self, command: str, argv: list, threads: int, seed=None):
        self.command = command
        self.argv = list(argv)
        self.threads = threads
        self.seed = seed
        self.params: dict = {}
        self.inputs: dict = {}
        self._t0 = time.monotonic()

    def manifest(self) -> dict:
        return {
            "command": self.command,
            "argv": self.argv,
            "params": self.params,
            "seed": self.seed,
            "threads": self.threads,
            "rng": _RNG_NAME,
            "version": __version__,
            "inputs": self.inputs,
            "wall_time_ms": int((time.monotonic() - self._t0) * 1000),
        }


def _ints(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x != ""]
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}")


def _frac_str(value) -> str:
    f = Fraction(value)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


# -- construct ---------------------------------------------------------------


def _construct_payloads(args):
    """Returns (params, graph, partition_or_None, extra_partition_fields)."""
    fam = args.family
    if fam == "norm-quotient":
        params = {"family": "norm_quotient", "q": args.q, "t": args.t, "d": args.d}
        if args.partition:
            if args.h is None or args.a is None:
                raise ValueError("norm-quotient partitions need --h and --a")
            params.update(h=args.h, a=args.a, patch_strategy=args.patch_strategy)
            G, P, stats = partition_norm_quotient(
                args.q, args.t, args.d, args.h, args.a,
                patch_strategy=args.patch_strategy, seed=args.seed,
            )
            return params, G, P, {"patch_stats": stats.to_json_dict()}
        return params, build_norm_quotient(args.q, args.t, args.d), None, {}
    if fam == "wenger":
        params = {"family": "wenger", "M": args.M, "q": args.q}
        if args.partition:
            G, P = partition_wenger(args.M, args.q, seed=args.seed)
            return params, G, P, {}
        return params, build_wenger(args.M, args.q), None, {}
    if fam == "theta":
        params = {"family": "theta", "q": args.q, "reduce_parts": not args.keep_internal_edges}
        G, P = build_theta(args.q, reduce_parts=not args.keep_internal_edges)
        return params, G, P, {}
    if fam == "berge3":
        params = {"family": "berge3", "q": args.q}
        G, P = build_berge3(args.q)
        return params, G, P, {}
    if fam == "design":
        params = {"family": "design_split", "id": args.id}
        design = design_catalog(args.id)
        G, P = build_design_split(design, design.m)
        params["design"] = {"m": design.m, "r": design.r, "t": design.t}
        return params, G, P, {}
    if fam == "property-B":
        c = _ints(args.c)
        params = {"family": "property_B", "m": args.m, "c": c, "r": args.r}
        G, P = build_property_B(args.m, c, args.r)
        return params, G, P, {}
    raise ValueError(f"unknown family {fam!r}")


def _cmd_construct(args, argv, threads) -> int:
    run = _Run("construct", argv, threads, seed=getattr(args, "seed", None))
    params, G, P, extra = _construct_payloads(args)
    run.params = params
    if args.partition and P is None:
        raise ValueError(f"family {args.family} did not produce a partition")
    _emit(G.to_json_dict(), run.manifest(), args.out)
    if args.partition:
        payload = P.to_json_dict()
        payload.update(extra)
        _emit(payload, run.manifest(), args.partition)
    return 0


# -- verify ------------------------------------------------------------------


def _cmd_verify(args, argv, threads) -> int:
    run = _Run("verify", argv, threads)
    G = _load_graph(args.graph, run.inputs)
    P = _load_partition(args.partition, run.inputs)
    run.params = {"forbid": list(args.forbid or [])}
    report = verify_rk(G, P)
    rep = report.to_json_dict()
    rep.pop("wall_time", None)  # belongs in provenance, not the payload
    findings = []
    for pat_text in args.forbid or []:
        pat = parse_pattern(pat_text)
        findings.append({"pattern": pat.spec_string(), "witness": check_pattern(G, pat)})
    split_ok = report.completeness_ok and report.independence_ok
    found = any(f["witness"] is not None for f in findings)
    payload = {"report": rep, "forbidden": findings, "ok": split_ok and not found}
    _emit(payload, run.manifest(), args.out)
    if not split_ok:
        return 3
    if found:
        return 4
    return 0


# -- spectrum / mixing -------------------------------------------------------


def _cmd_spectrum(args, argv, threads) -> int:
    run = _Run("spectrum", argv, threads)
    G = _load_graph(args.graph, run.inputs)
    s = spectrum(G)
    payload = {
        "n": s.n,
        "d": s.d,
        "bipartite": s.bipartite,
        "rho": s.rho,
        "rho1": s.rho1,
        "rho2": s.rho2,
        "rho_n": s.rho_n,
        "eigenvalues": list(s.eigenvalues) if s.eigenvalues is not None else None,
        "extremes": list(s.extremes) if s.extremes is not None else None,
    }
    _emit(payload, run.manifest(), args.out)
    return 0


def _cmd_mixing(args, argv, threads) -> int:
    run = _Run("mixing", argv, threads)
    G = _load_graph(args.graph, run.inputs)
    U = _ints(args.U)
    W = _ints(args.W)
    run.params = {"U": U, "W": W, "mode": args.mode}
    payload = dict(mixing_check(G, U, W, mode=args.mode))
    payload.update(mode=args.mode, n_U=len(set(U)), n_W=len(set(W)))
    _emit(payload, run.manifest(), args.out)
    return 0


# -- bound -------------------------------------------------------------------


def _cmd_bound(args, argv, threads) -> int:
    run = _Run("bound", argv, threads)
    if args.lower:
        env = TuranEnvelope(C=Fraction(args.C), e=Fraction(args.e), m=args.m)
        exact = min_k_lower(args.r, args.m, env)
        relaxed = min_k_lower_relaxed(args.r, args.m, env)
        run.params = {"r": args.r, "m": args.m, "C": _frac_str(env.C), "e": _frac_str(env.e)}
        payload = {
            "quantity": "min-k-lower",
            "value": str(exact),
            "value_float": float(exact),
            "formula_ref": "lb.exact-binomial",
            "relaxed": {"value": str(relaxed), "formula_ref": "lb.relaxed-power"},
        }
    elif args.berge_path:
        v = berge_path_k_lb(args.r, args.m, args.t)
        run.params = {"r": args.r, "m": args.m, "t": args.t}
        payload = {
            "quantity": "berge-path-k-lb",
            "value": _frac_str(v),
            "value_float": float(v),
            "formula_ref": "lb.berge-path-replication",
        }
    elif args.tree:
        v = tree_bound(args.r, args.t)
        run.params = {"r": args.r, "t": args.t}
        payload = {
            "quantity": "tree-bound",
            "value": _frac_str(v),
            "value_float": float(v),
            "formula_ref": "lb.tree-ratio",
        }
    elif args.admissible:
        pair = admissible_pair_for(args.d, max_primes=args.max_primes)
        run.params = {"d": args.d, "max_primes": args.max_primes}
        payload = {
            "quantity": "admissible-pair",
            "value": _frac_str(pair.coefficient),
            "value_float": float(pair.coefficient),
            "formula_ref": "ub.admissible-pair",
            "d1": pair.d1,
            "d2": pair.d2,
            "x0": pair.x0,
            "modulus": pair.modulus,
            "primes": list(pair.primes),
            "patterns": list(pair.patterns),
            "r_values": list(pair.r_values),
        }
    elif args.k2d:
        v = k2d_upper_coeff(args.d)
        run.params = {"d": args.d}
        payload = {
            "quantity": "k2d-upper-coeff",
            "value": repr(v),
            "value_float": v,
            "formula_ref": "ub.k2d-coefficient",
        }
    else:  # table
        table = small_d_table()
        run.params = {}
        payload = {
            "quantity": "small-d-table",
            "value": {str(k): v for k, v in sorted(table.items())},
            "formula_ref": "ub.small-d-table",
        }
    _emit(payload, run.manifest(), args.out)
    return 0


# -- oracle ------------------------------------------------------------------


def _cmd_oracle(args, argv, threads) -> int:
    run = _Run("oracle", argv, threads)
    patterns = tuple(parse_pattern(p) for p in args.forbid)
    run.params = {
        "r": args.r, "m": args.m, "k_max": args.k_max,
        "forbid": [p.spec_string() for p in patterns], "budget": args.budget,
    }
    query = OracleQuery(args.r, args.m, args.k_max, patterns, budget=args.budget)
    res = exact_f(query)
    certificate = None
    if res.status == "found":
        certificate = {
            "graph": res.graph.to_json_dict(),
            "partition": res.partition.to_json_dict(),
        }
    payload = {
        "status": res.status,
        "value": res.value,
        "k_max": args.k_max,
        "per_k_nodes": {str(k): v for k, v in res.per_k_nodes.items()},
        "nodes_total": res.nodes_total,
        "certificate": certificate,
    }
    _emit(payload, run.manifest(), args.out)
    if certificate is not None:
        if args.cert_graph:
            _emit(certificate["graph"], run.manifest(), args.cert_graph)
        if args.cert_partition:
            _emit(certificate["partition"], run.manifest(), args.cert_partition)
    return 0


# -- partition-greedy --------------------------------------------------------


def _cmd_partition_greedy(args, argv, threads) -> int:
    run = _Run("partition-greedy", argv, threads, seed=args.seed)
    G = _load_graph(args.graph, run.inputs)
    H = parse_pattern(args.forbid)
    sizes = {}
    if args.seed_size is not None:
        sizes["seed_size"] = args.seed_size
    if args.target_s is not None:
        sizes["target_s"] = args.target_s
    if args.max_iters is not None:
        sizes["max_iters"] = args.max_iters
    run.params = {"m": args.m, "forbid": H.spec_string(), "sizes": sizes}
    try:
        G2, P, trace = greedy_split(G, args.m, H, sizes=sizes or None, seed=args.seed)
    except BudgetExceededError:
        raise
    except RuntimeError as exc:
        print(f"partitioning failed: {exc}", file=sys.stderr)
        return 3
    _emit(G2.to_json_dict(), run.manifest(), args.out_graph)
    payload = P.to_json_dict()
    payload["trace"] = trace.to_json_dict()
    _emit(payload, run.manifest(), args.out_partition)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            for rec in trace.iteration_records():
                fh.write(json.dumps(rec, sort_keys=True, ensure_ascii=False) + "\n")
            fh.write(json.dumps({"provenance": run.manifest()}, sort_keys=True, ensure_ascii=False) + "\n")
    return 0


# -- parser ------------------------------------------------------------------


def _add_threads(p) -> None:
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads to record; SPLITFORGE_THREADS is the fallback; "
                        "never affects results")


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="splitforge", allow_abbrev=False, description=__doc__)
    sub = top.add_subparsers(dest="cmd", required=True)

    pc = sub.add_parser("construct", allow_abbrev=False, help="build a graph/partition pair")
    fam = pc.add_subparsers(dest="family", required=True)

    f = fam.add_parser("norm-quotient", allow_abbrev=False)
    f.add_argument("--q", type=int, required=True)
    f.add_argument("--t", type=int, required=True)
    f.add_argument("--d", type=int, default=1)
    f.add_argument("--h", type=int, default=None, help="subgroup block count for the partition")
    f.add_argument("--a", type=int, default=None, help="parts per point/line class")
    f.add_argument("--patch-strategy", choices=["matching", "greedy_reuse"], default="matching")

    f = fam.add_parser("wenger", allow_abbrev=False)
    f.add_argument("--M", type=int, required=True)
    f.add_argument("--q", type=int, required=True)

    f = fam.add_parser("theta", allow_abbrev=False)
    f.add_argument("--q", type=int, required=True)
    f.add_argument("--keep-internal-edges", action="store_true",
                   help="keep the solvable within-part edges instead of dropping them")

    f = fam.add_parser("berge3", allow_abbrev=False)
    f.add_argument("--q", type=int, required=True)

    f = fam.add_parser("design", allow_abbrev=False)
    f.add_argument("--id", required=True, help="catalog id, e.g. fano, PG(2,3), all-3-subsets(5,3)")

    f = fam.add_parser("property-B", allow_abbrev=False)
    f.add_argument("--m", type=int, required=True)
    f.add_argument("--c", required=True, help="comma-separated color profile, e.g. 1,1")
    f.add_argument("--r", type=int, required=True)

    for f in fam.choices.values():
        f.add_argument("--out", required=True, help="graph JSON path")
        f.add_argument("--partition", default=None, help="partition JSON path")
        f.add_argument("--seed", type=int, default=None)
        _add_threads(f)
        f.set_defaults(handler=_cmd_construct)

    pv = sub.add_parser("verify", allow_abbrev=False, help="certify a split and check patterns")
    pv.add_argument("--graph", required=True)
    pv.add_argument("--partition", required=True)
    pv.add_argument("--forbid", action="append", default=None,
                    help="pattern like C_6, K_{2,2}, theta_{3,4}, bergeC_2; repeatable")
    pv.add_argument("--out", default=None)
    _add_threads(pv)
    pv.set_defaults(handler=_cmd_verify)

    ps = sub.add_parser("spectrum", allow_abbrev=False, help="adjacency spectrum of a regular graph")
    ps.add_argument("--graph", required=True)
    ps.add_argument("--out", default=None)
    _add_threads(ps)
    ps.set_defaults(handler=_cmd_spectrum)

    pm = sub.add_parser("mixing", allow_abbrev=False, help="edge-distribution check between two sets")
    pm.add_argument("--graph", required=True)
    pm.add_argument("--U", required=True, help="comma-separated vertex indices")
    pm.add_argument("--W", required=True, help="comma-separated vertex indices")
    pm.add_argument("--mode", choices=["general", "bipartite"], default="general")
    pm.add_argument("--out", default=None)
    _add_threads(pm)
    pm.set_defaults(handler=_cmd_mixing)

    pb = sub.add_parser("bound", allow_abbrev=False, help="lower/upper bound calculators")
    which = pb.add_mutually_exclusive_group(required=True)
    which.add_argument("--lower", action="store_true", help="counting lower bound on k")
    which.add_argument("--berge-path", action="store_true", help="replication-number bound")
    which.add_argument("--tree", action="store_true", help="(r-1)/(t-1)")
    which.add_argument("--admissible", action="store_true", help="divisor pair with sample primes")
    which.add_argument("--k2d", action="store_true", help="upper-bound coefficient for d >= 12")
    which.add_argument("--table", action="store_true", help="small-d reference constants")
    pb.add_argument("--r", type=int)
    pb.add_argument("--m", type=int)
    pb.add_argument("--t", type=int)
    pb.add_argument("--d", type=int)
    pb.add_argument("--C", default="1")
    pb.add_argument("--e", default="1.5")
    pb.add_argument("--max-primes", type=int, default=4)
    pb.add_argument("--out", default=None)
    _add_threads(pb)
    pb.set_defaults(handler=_cmd_bound)

    po = sub.add_parser("oracle", allow_abbrev=False, help="exact threshold on tiny instances")
    po.add_argument("--r", type=int, required=True)
    po.add_argument("--m", type=int, required=True)
    po.add_argument("--k-max", type=int, required=True)
    po.add_argument("--forbid", action="append", required=True)
    po.add_argument("--budget", type=int, default=2_000_000)
    po.add_argument("--out", default=None)
    po.add_argument("--cert-graph", default=None)
    po.add_argument("--cert-partition", default=None)
    _add_threads(po)
    po.set_defaults(handler=_cmd_oracle)

    pg = sub.add_parser("partition-greedy", allow_abbrev=False,
                        help="pattern-free split of a regular graph by seeded growth")
    pg.add_argument("--graph", required=True)
    pg.add_argument("--m", type=int, required=True)
    pg.add_argument("--forbid", required=True)
    pg.add_argument("--seed", type=int, default=None)
    pg.add_argument("--seed-size", type=int, default=None)
    pg.add_argument("--target-s", type=int, default=None)
    pg.add_argument("--max-iters", type=int, default=None)
    pg.add_argument("--out-graph", required=True)
    pg.add_argument("--out-partition", required=True)
    pg.add_argument("--trace", default=None, help="iteration records as JSON lines")
    _add_threads(pg)
    pg.set_defaults(handler=_cmd_partition_greedy)

    return top


def _resolve_threads(flag_value) -> int:
    if flag_value is None:
        env = os.environ.get("SPLITFORGE_THREADS")
        if env is None or env == "":
            return 1
        try:
            flag_value = int(env)
        except ValueError:
            raise ValueError(f"SPLITFORGE_THREADS must be an integer, got {env!r}")
    if flag_value < 1:
        raise ValueError(f"thread count must be >= 1, got {flag_value}")
    return flag_value


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        threads = _resolve_threads(args.threads)
        return args.handler(args, argv, threads)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 5
    except (ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"invalid parameters or input: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"internal failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
