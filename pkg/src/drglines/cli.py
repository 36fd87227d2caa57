"""Command-line front end: parameter reports, graph generation and audits,
threshold checks, line extraction, and geometry verification.

Reports are JSON documents with a versioned schema; graph and line files use
simple text formats (plus a binary CSR variant for large graphs) that
round-trip byte-identically.

Exit codes: 0 success, 1 argument error, 2 resource/budget exceeded,
3 certification or verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from . import __version__
from .cliquelines import PlsParams, extract_lines
from .drgparams import (
    InfeasibleParams,
    feasible_s_search,
    grassmann_array,
    grassmann_params,
    grassmann_spectrum,
    kmn_parameters,
    metsch_exception_case,
    theorem_main_conditions,
    verify_tridiagonal_spectrum,
)
from .graphcore import (
    BudgetError,
    Graph,
    GrassmannLabels,
    audit_distance_regular,
    build_grassmann_graph,
)
from .plspace import (
    LinearityError,
    build_pls,
    compare_line_sets,
    grassmann_line_oracle,
    pls_point_graph,
    verify_rcs,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BUDGET = 2
EXIT_FAILED = 3


# ---------------------------------------------------------------------------
# file formats


def parse_mem_cap(text: str) -> int:
    """Parse a byte budget like '16G', '512M', '64K', or a plain integer."""
    t = text.strip().upper()
    scale = 1
    if t and t[-1] in "KMG":
        scale = {"K": 1024, "M": 1024**2, "G": 1024**3}[t[-1]]
        t = t[:-1]
    try:
        value = int(t)
    except ValueError:
        raise ValueError(f"cannot parse memory cap {text!r}") from None
    if value <= 0:
        raise ValueError("memory cap must be positive")
    return value * scale


def save_graph(g: Graph, path: str) -> None:
    """Write a graph file; '.drgb' selects the binary CSR variant (which
    carries no label block), anything else the text format."""
    if path.endswith(".drgb"):
        if len(g.indices) >= 2**32 or g.vertex_count >= 2**32:
            raise ValueError("graph too large for the 32-bit binary format")
        with open(path, "wb") as fh:
            fh.write(f"drgraphbin 1 {g.vertex_count} {g.edge_count}\n".encode())
            fh.write(g.indptr.astype("<u4").tobytes())
            fh.write(g.indices.astype("<u4").tobytes())
        return
    with open(path, "w") as fh:
        fh.write(f"drgraph 1 {g.vertex_count} {g.edge_count}\n")
        if g.labels is not None:
            lab = g.labels
            fh.write(f"labels subspace {lab.n} {lab.D} {lab.q}\n")
            for key in lab.keys:
                fh.write(f"{int(key):x}\n")
        for v in range(g.vertex_count):
            fh.write(" ".join(map(str, g.neighbors(v))))
            fh.write("\n")


def load_graph(path: str) -> Graph:
    with open(path, "rb") as fh:
        blob = fh.read()
    nl = blob.find(b"\n")
    fields = blob[: max(nl, 0)].decode(errors="replace").split()
    if fields[:2] == ["drgraphbin", "1"]:
        V, E = int(fields[2]), int(fields[3])
        body = nl + 1
        need = 4 * (V + 1) + 4 * 2 * E
        if len(blob) - body != need:
            raise ValueError(f"{path}: binary payload has the wrong length")
        indptr = np.frombuffer(blob, dtype="<u4", count=V + 1, offset=body)
        indices = np.frombuffer(
            blob, dtype="<u4", count=2 * E, offset=body + 4 * (V + 1)
        )
        return Graph(V, indptr.astype(np.int64), indices.astype(np.int32), None)
    if fields[:2] != ["drgraph", "1"]:
        raise ValueError(f"{path}: not a graph file")
    V, E = int(fields[2]), int(fields[3])
    text = blob[nl + 1 :].decode().splitlines()
    labels = None
    row = 0
    if text and text[0].startswith("labels subspace"):
        _, _, n, D, q = text[0].split()
        keys = np.array([int(t, 16) for t in text[1 : V + 1]], dtype=np.int64)
        labels = GrassmannLabels(int(n), int(D), int(q), keys)
        row = V + 1
    if len(text) - row != V:
        raise ValueError(f"{path}: expected {V} adjacency rows")
    chunks = []
    counts = np.empty(V, dtype=np.int64)
    for v in range(V):
        line = text[row + v]
        ids = (
            np.array(line.split(), dtype=np.int64)
            if line
            else np.empty(0, np.int64)
        )
        counts[v] = len(ids)
        chunks.append(ids)
    indptr = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
    indices = (
        np.concatenate(chunks).astype(np.int32) if V else np.empty(0, np.int32)
    )
    g = Graph(V, indptr, indices, labels)
    if g.edge_count != E:
        raise ValueError(f"{path}: header claims {E} edges, found {g.edge_count}")
    return g


def save_lines(lines, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(f"lines 1 {len(lines)}\n")
        for ln in lines:
            fh.write(" ".join(map(str, ln)))
            fh.write("\n")


def load_lines(path: str):
    with open(path) as fh:
        head = fh.readline().split()
        if head[:2] != ["lines", "1"]:
            raise ValueError(f"{path}: not a line-set file")
        count = int(head[2])
        lines = tuple(
            tuple(int(t) for t in fh.readline().split()) for _ in range(count)
        )
    return lines


# ---------------------------------------------------------------------------
# report plumbing


def _json_default(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    return str(o)


def _emit(args, payload: dict, t0: float, stream=None) -> None:
    config = {
        k: v
        for k, v in sorted(vars(args).items())
        if k != "func" and not k.startswith("_")
    }
    report = {
        "schema": 1,
        "tool": "drg-lines",
        "version": __version__,
        "command": args.command,
        "config": config,
        "timing_s": round(time.perf_counter() - t0, 3),
    }
    report.update(payload)
    print(json.dumps(report, indent=2, default=_json_default), file=stream or sys.stdout)


# ---------------------------------------------------------------------------
# commands


def cmd_params(args) -> int:
    t0 = time.perf_counter()
    p = grassmann_params(args.n, args.D, args.q)
    arr = grassmann_array(args.n, args.D, args.q)
    spec = grassmann_spectrum(args.n, args.D, args.q)
    payload = {
        "classical": {"D": p.D, "b": p.b, "alpha": p.alpha, "beta": p.beta},
        "intersection_array": {"b": list(arr.b), "c": list(arr.c), "a": list(arr.a)},
        "k": arr.k,
        "c2": arr.c_at(2),
        "spectrum": [[t, m] for t, m in spec.entries],
        "metsch_case": metsch_exception_case(args.n, args.D, args.q).value,
        "tridiagonal_verified": verify_tridiagonal_spectrum(arr, spec),
    }
    _emit(args, payload, t0)
    return EXIT_OK if payload["tridiagonal_verified"] else EXIT_FAILED


def cmd_gen(args) -> int:
    t0 = time.perf_counter()
    g = build_grassmann_graph(
        args.n, args.D, args.q, mem_cap=parse_mem_cap(args.mem_cap)
    )
    save_graph(g, args.out)
    _emit(
        args,
        {
            "vertices": g.vertex_count,
            "edges": g.edge_count,
            "out": args.out,
            "format": "binary" if args.out.endswith(".drgb") else "text",
        },
        t0,
    )
    return EXIT_OK


def cmd_audit(args) -> int:
    t0 = time.perf_counter()
    g = load_graph(args.graph)
    audit = audit_distance_regular(g, mode=args.mode, sample=args.sample, seed=args.seed)
    payload = {
        "vertices": g.vertex_count,
        "edges": g.edge_count,
        "is_drg": audit.is_drg,
        "connected": audit.connected,
        "diameter": audit.diameter,
        "intersection_array": None
        if audit.array is None
        else {"b": list(audit.array.b), "c": list(audit.array.c)},
        "audit_mode": audit.mode,
        "bases_checked": audit.bases_checked,
        "counterexample": None
        if audit.counterexample is None
        else dict(
            zip(
                ("base", "vertex", "distance", "kind", "expected", "got"),
                audit.counterexample,
            )
        ),
    }
    _emit(args, payload, t0)
    return EXIT_OK if audit.is_drg else EXIT_FAILED


def cmd_check_main(args) -> int:
    t0 = time.perf_counter()
    beta = 2 ** (args.D + args.ell + 1) - 2
    rep = theorem_main_conditions(args.D, beta)
    payload = {
        "D": rep.D,
        "beta": rep.beta,
        "ell": rep.ell,
        "s": rep.s,
        "m": rep.m,
        "n": rep.n,
        "e": rep.e,
        "k": rep.k,
        "w": rep.w,
        "margins": {
            "cond3": rep.cond3_margin,
            "cond4": rep.cond4_margin,
            "cond5": rep.cond5_margin,
        },
        "e_gt_m": rep.e_gt_m,
        "s_integral": rep.s_integral,
        "local_eigenvalue_bound": str(rep.lambda_bound),
        "kmn_free_params": list(rep.kmn_free_params),
        "passed": rep.passed,
    }
    _emit(args, payload, t0)
    return EXIT_OK if rep.passed else EXIT_FAILED


def cmd_search_s(args) -> int:
    t0 = time.perf_counter()
    p = grassmann_params(args.n, args.D, args.q)
    arr = grassmann_array(args.n, args.D, args.q)
    m, nn = kmn_parameters(args.q + 1)
    e = arr.c_at(2) - 1
    found = feasible_s_search(p, m, nn, e, s_max=args.s_max)
    payload = {
        "m": m,
        "n": nn,
        "e": e,
        "k": arr.k,
        "w": arr.a[1],
        "s_max": args.s_max if args.s_max is not None else 4 * 2**args.D,
        "feasible_s": found,
        "empty": not found,
    }
    _emit(args, payload, t0)
    return EXIT_OK


def cmd_extract(args) -> int:
    t0 = time.perf_counter()
    g = load_graph(args.graph)
    if args.pls_params:
        vals = [int(x) for x in args.pls_params.split(",")]
        if len(vals) != 7:
            raise ValueError("--pls-params needs s,m,n,w,e,k,v")
        p = PlsParams(*vals)
    elif g.labels is not None:
        p = PlsParams.for_grassmann(g.labels.n, g.labels.D, g.labels.q)
    else:
        raise ValueError("unlabeled graph: supply --pls-params s,m,n,w,e,k,v")
    res = extract_lines(g, p, mode=args.mode, seed=args.seed)
    save_lines(res.lines, args.out)
    size_hist: dict[int, int] = {}
    for ln in res.lines:
        size_hist[len(ln)] = size_hist.get(len(ln), 0) + 1
    payload = {
        "params": {
            "s": p.s, "m": p.m, "n": p.n, "w": p.w, "e": p.e, "k": p.k, "v": p.v
        },
        "line_count": len(res.lines),
        "line_sizes": {str(k): v for k, v in sorted(size_hist.items())},
        "threshold": res.threshold,
        "partitions_certified": res.partitions_certified,
        "partition_failure_count": res.partition_failure_count,
        "partition_failures": list(res.partition_failures),
        "edge_unique": res.edge_unique,
        "edges_multi": [list(x) for x in res.edges_multi],
        "edges_uncovered": [list(x) for x in res.edges_uncovered],
        "lines_per_vertex": [res.min_lines_per_vertex, res.max_lines_per_vertex],
        "lines_per_vertex_ok": res.lines_per_vertex_ok,
        "certified": res.certified,
        "out": args.out,
    }
    _emit(args, payload, t0)
    return EXIT_OK if res.certified else EXIT_FAILED


def cmd_verify_rcs(args) -> int:
    t0 = time.perf_counter()
    lines = load_lines(args.lines)
    g = load_graph(args.graph)
    pls = build_pls(g.vertex_count, lines)
    pg = pls_point_graph(pls)
    matches = pg.same_edges(g)
    rep = verify_rcs(
        pls,
        q=args.q,
        point_graph=pg,
        sample_pairs=args.sample_pairs,
        seed=args.seed,
    )
    oracle = {"available": g.labels is not None}
    if g.labels is not None:
        want = grassmann_line_oracle(g.labels.n, g.labels.D, g.labels.q, g.labels.keys)
        cmp = compare_line_sets(lines, want)
        oracle.update(
            equal=cmp.equal,
            count_given=cmp.count_a,
            count_oracle=cmp.count_b,
            only_in_given=[list(x) for x in cmp.only_in_a],
            only_in_oracle=[list(x) for x in cmp.only_in_b],
        )
    payload = {
        "points": pls.point_count,
        "line_count": pls.line_count,
        "point_graph_matches": matches,
        "rcs": {
            "mode": rep.mode,
            "cond1_ok": rep.cond1_ok,
            "min_line_size": rep.min_line_size,
            "cond2_ok": rep.cond2_ok,
            "min_lines_per_point": rep.min_lines_per_point,
            "cond3_ok": rep.cond3_ok,
            "cond3_checked": rep.cond3_checked,
            "cond3_witnesses": [list(x) for x in rep.cond3_witnesses],
            "cond4_ok": rep.cond4_ok,
            "cond4_checked": rep.cond4_checked,
            "cond4_witnesses": [list(x) for x in rep.cond4_witnesses],
            "cond5_ok": rep.cond5_ok,
            "passed": rep.passed,
        },
        "oracle": oracle,
    }
    _emit(args, payload, t0)
    ok = rep.passed and matches and oracle.get("equal", True)
    return EXIT_OK if ok else EXIT_FAILED


# ---------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=42, help="RNG seed (default 42)")
    common.add_argument(
        "--threads",
        type=int,
        default=os.cpu_count() or 1,
        help="upper bound on worker threads (default: hardware parallelism; "
        "current pipelines are single-process)",
    )
    common.add_argument(
        "--mem-cap",
        default="16G",
        help="memory budget for graph construction, e.g. 16G or 512M (default 16G)",
    )
    common.add_argument(
        "--tol",
        type=float,
        default=1e-8,
        help="tolerance for floating-point diagnostics (default 1e-8; the "
        "shipped checks use exact integer arithmetic)",
    )

    parser = _Parser(
        prog="drg-lines",
        description="Distance-regular graph line extraction and verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser(
        "params", parents=[common], help="classical parameters, spectrum, Metsch case"
    )
    sp.add_argument("n", type=int)
    sp.add_argument("D", type=int)
    sp.add_argument("q", type=int)
    sp.set_defaults(func=cmd_params)

    sp = sub.add_parser("gen", parents=[common], help="build a Grassmann graph file")
    sp.add_argument("n", type=int)
    sp.add_argument("D", type=int)
    sp.add_argument("q", type=int)
    sp.add_argument("out", help="output path; .drgb selects the binary format")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser(
        "audit", parents=[common], help="distance-regularity audit of a graph file"
    )
    sp.add_argument("graph")
    sp.add_argument(
        "--mode",
        choices=["auto", "full", "sampled"],
        default="auto",
        help="audit every base vertex, a seeded sample, or choose by size (default auto)",
    )
    sp.add_argument(
        "--sample", type=int, default=64, help="bases in sampled mode (default 64)"
    )
    sp.set_defaults(func=cmd_audit)

    sp = sub.add_parser(
        "check-main",
        parents=[common],
        help="exact margins of the main existence conditions at (D, ell)",
    )
    sp.add_argument("D", type=int)
    sp.add_argument("ell", type=int)
    sp.set_defaults(func=cmd_check_main)

    sp = sub.add_parser(
        "search-s",
        parents=[common],
        help="search the feasible window of s for a parameter tuple",
    )
    sp.add_argument("n", type=int)
    sp.add_argument("D", type=int)
    sp.add_argument("q", type=int)
    sp.add_argument("--s-max", type=int, default=None, help="default 4*2^D")
    sp.set_defaults(func=cmd_search_s)

    sp = sub.add_parser(
        "extract", parents=[common], help="extract and certify the line system"
    )
    sp.add_argument("graph")
    sp.add_argument("out", help="line-set output path")
    sp.add_argument(
        "--mode",
        choices=["improved", "metsch"],
        default="improved",
        help="line-size threshold variant (default improved)",
    )
    sp.add_argument(
        "--pls-params",
        default=None,
        help="comma-separated s,m,n,w,e,k,v (defaults to the graph's own "
        "parameters when it carries subspace labels)",
    )
    sp.set_defaults(func=cmd_extract)

    sp = sub.add_parser(
        "verify-rcs",
        parents=[common],
        help="verify the recognition conditions of an extracted line system",
    )
    sp.add_argument("lines")
    sp.add_argument("graph")
    sp.add_argument("q", type=int)
    sp.add_argument(
        "--sample-pairs",
        type=int,
        default=1_000_000,
        help="near-incidence pairs checked in sampled mode (default 1e6)",
    )
    sp.set_defaults(func=cmd_verify_rcs)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except BudgetError as e:
        print(f"drg-lines: budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except LinearityError as e:
        print(
            f"drg-lines: not a partial linear space: {e}",
            file=sys.stderr,
        )
        return EXIT_FAILED
    except (InfeasibleParams, ValueError, OSError) as e:
        print(f"drg-lines: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
