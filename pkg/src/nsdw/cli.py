"""Command-line front end: ``nsdw weight|chi|verify|batch``.

Every command writes one report document to standard output.  Exit codes:
0 all valid, 1 usage or parse error, 2 some result inconclusive, 3 a nice
graph was found with no {1..m} weighting.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import solver
from .algorithms import ALGORITHMS
from .errors import GraphParseError, InvariantViolation, NSDWError, PreconditionError
from .graph import Graph, is_nice, parse_edge_list, parse_graph6, to_graph6
from .weighting import EdgeWeighting, WeightSet, parse_weighting, validate_assignment

SCHEMA = 1
EXIT_OK, EXIT_USAGE, EXIT_INCONCLUSIVE, EXIT_VIOLATION = 0, 1, 2, 3

VALID = "valid"
NONE_EXISTS = "no-weighting-exists"
INCONCLUSIVE = "inconclusive"
ERROR = "error"


class UsageError(Exception):
    pass


def _default_timeout_ms() -> int | None:
    raw = os.environ.get("NSDW_TIMEOUT_MS")
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"NSDW_TIMEOUT_MS must be an integer, got {raw!r}") from None


def _budget(args) -> dict:
    timeout_ms = args.timeout_ms if args.timeout_ms is not None else _default_timeout_ms()
    timeout = solver.DEFAULT_TIMEOUT if timeout_ms is None else timeout_ms / 1000
    max_nodes = args.max_nodes if args.max_nodes is not None else solver.DEFAULT_MAX_NODES
    return {"max_nodes": max_nodes, "timeout": timeout}


def _read(path: str) -> str:
    try:
        with open(path, encoding="ascii") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _graph6_lines(text: str):
    """Yield (line number, stripped line) for every non-blank line."""
    for i, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if line:
            yield i, line


def _load_graphs(path: str, fmt: str) -> list[tuple[str, Graph]]:
    text = _read(path)
    try:
        if fmt == "edgelist":
            return [(os.path.basename(path), parse_edge_list(text))]
        return [(f"{os.path.basename(path)}:{i}", parse_graph6(line)) for i, line in _graph6_lines(text)]
    except GraphParseError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_weights(path: str) -> WeightSet:
    values = []
    for i, line in enumerate(_read(path).splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            values.append(int(line))
        except ValueError:
            raise UsageError(f"{path}: line {i}: expected one integer") from None
    try:
        return WeightSet(values)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _base_record(gid: str, g: Graph) -> dict:
    return {"id": gid, "graph_hash": g.digest(), "graph6": to_graph6(g), "n": g.n, "m": g.m}


def _weighting_fields(wt: EdgeWeighting) -> dict:
    return {
        "weights": [[u, v, w] for (u, v), w in sorted(wt.assignment.items())],
        "sigma": wt.sigmas(),
    }


def _emit(doc: dict, output: str, stream=None) -> None:
    stream = stream or sys.stdout
    if output == "json":
        json.dump(doc, stream, indent=2, sort_keys=True)
        stream.write("\n")
        return
    lines = [f"command: {doc['command']['name']}"]
    for rec in doc["records"]:
        head = f"{rec.get('id', '?')}: {rec['outcome']}"
        if "algorithm" in rec:
            head += f" [{rec['algorithm']}{'/' + rec['route'] if rec.get('route') else ''}]"
        if "chi" in rec and rec["chi"] is not None:
            head += f" chi={rec['chi']}"
        if rec.get("error"):
            head += f" ({rec['error']})"
        lines.append(head)
        if "weights" in rec:
            lines.append("  weights: " + " ".join(f"{u}-{v}:{w}" for u, v, w in rec["weights"]))
            lines.append("  sigma:   " + " ".join(str(s) for s in rec["sigma"]))
    summary = doc["summary"]
    lines.append("summary: " + ", ".join(f"{k}={summary[k]}" for k in sorted(summary)))
    stream.write("\n".join(lines) + "\n")


def _summary(records: list[dict], **extra) -> dict:
    out = {VALID: 0, NONE_EXISTS: 0, INCONCLUSIVE: 0, ERROR: 0}
    for rec in records:
        out[rec["outcome"]] += 1
    out.update(extra)
    return out


def _exit_code(records: list[dict], violation_outcome: str | None = None) -> int:
    outcomes = {r["outcome"] for r in records}
    if violation_outcome and violation_outcome in outcomes:
        return EXIT_VIOLATION
    if INCONCLUSIVE in outcomes:
        return EXIT_INCONCLUSIVE
    return EXIT_OK if outcomes <= {VALID} else EXIT_USAGE


def _document(name: str, args, records: list[dict], **summary_extra) -> dict:
    echo = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "command")}
    return {"schema": SCHEMA, "command": {"name": name, "args": echo}, "records": records,
            "summary": _summary(records, **summary_extra)}


# -- per-graph workers (module-level so the batch pool can pickle them) --------

def run_algorithm(gid: str, g: Graph, alg: str, w_set: WeightSet, trace: bool = False,
                  timings: bool = False) -> dict:
    rec = _base_record(gid, g)
    rec.update(algorithm=alg, budget=len(w_set))
    start = time.monotonic()
    try:
        cert = ALGORITHMS[alg](g, w_set)
    except InvariantViolation as exc:
        rec.update(outcome=ERROR, error=f"internal invariant violated: {exc}", details=_plain(exc.details))
    except NSDWError as exc:
        rec.update(outcome=ERROR, error=str(exc))
    else:
        rec.update(outcome=VALID if cert.valid else ERROR, report=cert.report.to_dict(),
                   **_weighting_fields(cert.weighting))
        if cert.route:
            rec["route"] = cert.route
        if trace:
            rec["trace"] = cert.trace.to_list()
    if timings:
        rec["elapsed"] = time.monotonic() - start
    return rec


def _plain(obj):
    return json.loads(json.dumps(obj, default=str))


def run_chi(gid: str, g: Graph, budget: dict, timings: bool = False) -> dict:
    rec = _base_record(gid, g)
    rec["algorithm"] = "exact"
    try:
        res = solver.compute_chi(g, **budget)
    except NSDWError as exc:
        rec.update(outcome=ERROR, error=str(exc))
        return rec
    rec.update(res.to_dict(timings))
    if res.inconclusive:
        rec["outcome"] = INCONCLUSIVE
    else:
        rec.update(outcome=VALID, budget=res.chi, **_weighting_fields(res.witness))
    return rec


def run_check(gid: str, g: Graph, check: str, budget: dict, timings: bool = False) -> dict:
    if check.startswith("alg:"):
        alg = check[4:]
        return run_algorithm(gid, g, alg, WeightSet.interval(_alg_budget(g, alg)), timings=timings)
    rec = _base_record(gid, g)
    rec["algorithm"] = "exact"
    rec["budget"] = g.m
    start = time.monotonic()
    if not is_nice(g):
        rec.update(outcome=ERROR, error="graph has a K2 component")
        return rec
    res = solver.search(g, WeightSet.interval(g.m), antimagic=check == "antimagic", **budget)
    rec["nodes_explored"] = res.nodes
    if res.status == "found":
        rec.update(outcome=VALID, **_weighting_fields(res.weighting))
    elif res.status == "none":
        rec["outcome"] = NONE_EXISTS
    else:
        rec["outcome"] = INCONCLUSIVE
    if timings:
        rec["elapsed"] = time.monotonic() - start
    return rec


def _alg_budget(g: Graph, alg: str) -> int:
    """The weight budget each algorithm is proved to need on g."""
    if alg in ("forest", "delta2"):
        return g.m
    if alg == "two-m":
        return 2 * g.m
    if alg == "m-plus-2delta":
        return g.m + 2 * g.max_degree
    if alg == "two-degenerate":
        return g.m + 4
    if alg == "mad3":
        return g.m + 6
    from .algorithms.auto import choose_route
    try:
        return choose_route(g)[1]
    except NSDWError:
        return g.m


# -- commands ------------------------------------------------------------------

def cmd_weight(args) -> int:
    if (args.k is None) == (args.weights is None):
        raise UsageError("give exactly one of --k or --weights")
    if args.k is not None and args.k < 0:
        raise UsageError("--k must be non-negative")
    w_set = WeightSet.interval(args.k) if args.k is not None else _load_weights(args.weights)
    graphs = _load_graphs(args.input, args.format)
    records = [run_algorithm(gid, g, args.alg, w_set, args.trace, args.timings) for gid, g in graphs]
    _emit(_document("weight", args, records), args.output)
    return _exit_code(records)


def cmd_chi(args) -> int:
    budget = _budget(args)
    graphs = _load_graphs(args.input, args.format)
    records = [run_chi(gid, g, budget, args.timings) for gid, g in graphs]
    _emit(_document("chi", args, records), args.output)
    return _exit_code(records)


def cmd_verify(args) -> int:
    graphs = _load_graphs(args.graph, args.format)
    if len(graphs) != 1:
        raise UsageError(f"{args.graph}: expected exactly one graph, found {len(graphs)}")
    gid, g = graphs[0]
    try:
        raw = parse_weighting(_read(args.weighting))
    except GraphParseError as exc:
        raise UsageError(f"{args.weighting}: {exc}") from None
    against = WeightSet.interval(g.m) if args.weights_must_be == "1..m" else None
    rec = _base_record(gid, g)
    rec["algorithm"] = "verify"
    try:
        report = validate_assignment(g, raw, against)
    except PreconditionError as exc:
        rec.update(outcome=ERROR, error=str(exc))
    else:
        rec["report"] = report.to_dict()
        if report.ok:
            rec.update(outcome=VALID, **_weighting_fields(EdgeWeighting(g, raw)))
        else:
            rec["outcome"] = ERROR
            rec["error"] = "; ".join(_failures(report))
    records = [rec]
    _emit(_document("verify", args, records), args.output)
    return _exit_code(records)


def _failures(report) -> list[str]:
    out = []
    if not report.edge_injective:
        out.append(f"edge-injectivity failure: weights {report.repeated_weights} repeated")
    if not report.nsd:
        out.append(f"NSD failure on edges {[list(e) for e in report.conflicts]}")
    if not report.weight_range_ok:
        out.append(f"range failure: {[[list(e), w] for e, w in report.out_of_range]}")
    return out


def _unreadable(gid: str, line: str, exc: Exception) -> dict:
    return {"id": gid, "graph6": line, "outcome": ERROR, "error": str(exc), "unreadable": True}


def _batch_job(job):
    gid, line, check, budget, timings = job
    try:
        g = parse_graph6(line)
    except GraphParseError as exc:
        return _unreadable(gid, line, exc)
    return run_check(gid, g, check, budget, timings)


def cmd_batch(args) -> int:
    check = args.check
    if check not in ("conjecture", "antimagic") and not (
            check.startswith("alg:") and check[4:] in ALGORITHMS):
        raise UsageError(f"unknown --check {check!r}; use conjecture, antimagic or alg:<name>")
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    budget = _budget(args)
    base = os.path.basename(args.input)
    jobs, skipped, unreadable = [], 0, []
    for i, line in _graph6_lines(_read(args.input)):
        gid = f"{base}:{i}"
        if args.skip_non_nice:
            try:
                if not is_nice(parse_graph6(line)):
                    skipped += 1
                    continue
            except GraphParseError as exc:
                unreadable.append(_unreadable(gid, line, exc))
                continue
        jobs.append((gid, line, check, budget, args.timings))
    if args.jobs == 1 or len(jobs) <= 1:
        results = [_batch_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_batch_job, jobs, chunksize=max(1, len(jobs) // (8 * args.jobs))))
    records = sorted(results + unreadable, key=lambda r: int(r["id"].rsplit(":", 1)[1]))
    violations = [r["graph6"] for r in records if r["outcome"] == NONE_EXISTS]
    extra = {"skipped": skipped}
    if check == "conjecture":
        extra["violations"] = violations
    doc = _document("batch", args, records, **extra)
    _emit(doc, args.output)
    if check == "conjecture" and violations:
        for line in violations:
            print(f"nsdw: no {{1..m}} weighting exists for {line}", file=sys.stderr)
    # unreadable lines are recorded but do not affect the exit code
    counted = [r for r in records if not r.get("unreadable")]
    return _exit_code(counted, NONE_EXISTS if check == "conjecture" else None)


# -- argument parsing --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nsdw", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, input_flag="--input"):
        p.add_argument(input_flag, required=True, metavar="FILE")
        p.add_argument("--format", choices=["graph6", "edgelist"], default="graph6")
        p.add_argument("--output", choices=["json", "text"], default="json")
        p.add_argument("--timings", action="store_true", help="include wall-clock times in records")

    def budgets(p):
        p.add_argument("--max-nodes", type=int, default=None, metavar="N")
        p.add_argument("--timeout-ms", type=int, default=None, metavar="MS")

    p = sub.add_parser("weight", help="run a constructive algorithm")
    common(p)
    p.add_argument("--alg", choices=sorted(ALGORITHMS), default="auto")
    p.add_argument("--k", type=int, metavar="N", help="use the weights 1..N")
    p.add_argument("--weights", metavar="FILE", help="weights, one integer per line")
    p.add_argument("--trace", action="store_true", help="include the reduction trace")
    p.set_defaults(func=cmd_weight)

    p = sub.add_parser("chi", help="compute the exact parameter with the backtracking solver")
    common(p)
    budgets(p)
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("verify", help="validate a weighting file")
    common(p, "--graph")
    p.add_argument("--weighting", required=True, metavar="FILE", help="lines 'u v weight'")
    p.add_argument("--weights-must-be", choices=["1..m", "any"], default="any")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("batch", help="check every graph6 line of a corpus")
    p.add_argument("--input", required=True, metavar="FILE")
    p.add_argument("--check", required=True, metavar="{conjecture|antimagic|alg:<name>}")
    p.add_argument("--jobs", type=int, default=1, metavar="N")
    p.add_argument("--output", choices=["json", "text"], default="json")
    p.add_argument("--skip-non-nice", action="store_true")
    p.add_argument("--timings", action="store_true")
    budgets(p)
    p.set_defaults(func=cmd_batch)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"nsdw: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
