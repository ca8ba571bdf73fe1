"""Command line front end for bounds, separation, verification and facet checks.

Subcommands
    bound        cutting plane upper bounds on DIMACS files or named instances
    separate     one separation call at a given fractional point
    verify       replay serialized cuts through the exact validity oracle
    facet-check  condition report and dimension certificates for a trace
    bench        seeded random graph suite with per cell aggregates

Instance names resolve in three steps: an existing file path, a built-in
generator name (stabcut.benchmarks.BENCHMARKS), then a file under the
directory named by $STABCUT_INSTANCES. DIMACS inputs are clique instances,
so bound and bench solve the complement unless --no-complement is given;
separate and verify take the graph as stated unless --complement is given.

CSV schema for bound (one row per instance and procedure) and bench (one row
per cell and procedure with means over the replications):

    graph,n,density,alpha,procedure,seeds,lb,z0,bound,
    clique_cuts,rank_cuts,wrank_cuts,status,time

density is the realized edge density of the solved graph. alpha is the known
or exactly computed stability number, blank when neither is available. The
three cut count columns partition every row the run added. time stays blank
unless --with-times is given, so equal seed reruns are byte identical.

The exit status is 0 only when every requested run terminated on its own
before the time limit (the engine verifies each cut it keeps) and, for
separate and verify, every cut passed the validity oracle.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import random
import sys
import zlib
from concurrent.futures import ProcessPoolExecutor

from .benchmarks import BENCHMARKS, KNOWN_OPTIMA
from .engine import cutting_plane_run
from .facets import (
    ORACLE_LIMIT,
    face_dimension,
    facet_report,
    condition_report,
    find_witnesses,
    witness_from_trace,
)
from .graph import Graph, read_dimacs
from .graph import random_graph
from .lifting import (
    Inequality,
    LiftingAborted,
    check_validity,
    clique_inequality,
    cut_from_json,
    cut_to_json,
    replay_consistent,
    strengthened_lift,
)
from .mwss import maximum_stable_set
from .projection import trace_from_json
from .separation import SeparationParams, sep_for_stab

PROCEDURES = {"c": "clique", "b": "basic", "s": "strengthened"}
EXACT_ALPHA_LIMIT = 40
COLUMNS = ["graph", "n", "density", "alpha", "procedure", "seeds", "lb",
           "z0", "bound", "clique_cuts", "rank_cuts", "wrank_cuts",
           "status", "time"]
COMPLETED = {"integral", "no_more_cuts", "round_limit"}


def _derived_seed(base: int, key: str) -> int:
    # stable across processes, unlike hash()
    return (base + zlib.crc32(key.encode())) & 0x7FFFFFFF


def _parse_procs(text: str):
    procs = []
    for part in text.split(","):
        part = part.strip()
        if part not in PROCEDURES:
            raise SystemExit("unknown procedure %r; pick from c,b,s" % part)
        if PROCEDURES[part] not in procs:
            procs.append(PROCEDURES[part])
    if not procs:
        raise SystemExit("empty procedure list")
    return procs


def _parse_point(value: str, n: int):
    if value.startswith("@"):
        with open(value[1:]) as fh:
            point = json.load(fh)
    else:
        point = [float(p) for p in value.split(",")]
    if len(point) != n:
        raise SystemExit("point has %d entries, graph has %d vertices"
                         % (len(point), n))
    for x in point:
        if not 0.0 <= float(x) <= 1.0:
            raise SystemExit("point entry %r outside [0, 1]" % (x,))
    return [float(x) for x in point]


def _parse_vertices(value: str):
    return tuple(int(p) for p in value.split(",") if p.strip() != "")


def load_instance(name: str, complement: bool) -> Graph:
    """Resolve an instance argument to the graph the run should solve."""
    if os.path.exists(name):
        g = read_dimacs(name)
        if not g.name:
            g = Graph(g.n, g.edges(),
                      name=os.path.splitext(os.path.basename(name))[0])
    elif name in BENCHMARKS:
        g = BENCHMARKS[name]()
    else:
        root = os.environ.get("STABCUT_INSTANCES", "")
        for cand in (os.path.join(root, name),
                     os.path.join(root, name + ".clq"),
                     os.path.join(root, name + ".txt")):
            if root and os.path.exists(cand):
                g = read_dimacs(cand)
                break
        else:
            raise FileNotFoundError("no file, generator, or $STABCUT_INSTANCES "
                                    "entry named %r" % name)
    if complement:
        g = g.complement()
    return g


def _known_alpha(g: Graph, complement: bool):
    """Stability number of g when it is known or cheap, else None."""
    suffix = "-complement"
    base = g.name[:-len(suffix)] if g.name.endswith(suffix) else g.name
    if complement and base in KNOWN_OPTIMA:
        return KNOWN_OPTIMA[base]
    if g.n <= EXACT_ALPHA_LIMIT:
        res = maximum_stable_set(g)
        if res.proven_optimal:
            return int(res.best_value)
    return None


def _build_params(args) -> SeparationParams:
    overrides = {}
    for field, attr in (("min_violation", "min_violation"),
                        ("min_depth", "min_depth"),
                        ("max_depth", "max_depth"),
                        ("max_iterations", "max_iter"),
                        ("max_ncuts", "max_ncuts"),
                        ("tomita_period", "tomita_period")):
        value = getattr(args, attr, None)
        if value is not None:
            overrides[field] = value
    return SeparationParams(**overrides)


def _bound_job(job):
    g, procedure, params, time_limit, seed = job
    rep = cutting_plane_run(g, params=params, procedure=procedure,
                            time_limit=time_limit, seed=seed)
    return rep


def _bound_row(g, alpha, procedure, rep, with_times, seeds=""):
    counts = rep.cut_counts or {}
    return [g.name or "?", str(g.n), "%.4f" % _density(g),
            "" if alpha is None else str(alpha), procedure, str(seeds),
            str(rep.lower_bound), "%.6f" % rep.z0, "%.6f" % rep.bound,
            str(counts.get("clique", 0)), str(counts.get("rank", 0)),
            str(counts.get("weighted", 0)), rep.status,
            "%.2f" % rep.wall_time if with_times else ""]


def _error_row(name, message):
    row = [name, "", "", "", "", "", "", "", "", "", "", "",
           "error: %s" % message, ""]
    return row


def _density(g: Graph) -> float:
    pairs = g.n * (g.n - 1) // 2
    return g.num_edges() / pairs if pairs else 0.0


def _emit(rows, fmt, header=COLUMNS):
    out = sys.stdout
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    elif fmt == "json":
        payload = [dict(zip(header, row)) for row in rows]
        out.write(json.dumps(payload, indent=1) + "\n")
    else:
        widths = [max(len(str(r[i])) for r in [header] + rows)
                  for i in range(len(header))]
        for row in [header] + rows:
            out.write("  ".join(str(c).ljust(w)
                                for c, w in zip(row, widths)).rstrip() + "\n")


def cmd_bound(args) -> int:
    procs = _parse_procs(args.proc)
    params = _build_params(args)
    jobs, meta = [], []
    for name in args.instances:
        try:
            g = load_instance(name, args.complement)
        except Exception as exc:
            meta.append((name, None, None, str(exc)))
            continue
        alpha = _known_alpha(g, args.complement)
        for procedure in procs:
            seed = _derived_seed(args.seed, "%s:%s" % (g.name, procedure))
            jobs.append((g, procedure, params, args.time_limit, seed))
            meta.append((name, g, alpha, None))

    rows, ok = [], True
    results = _run_jobs(_bound_job, jobs, args.jobs)
    it = iter(results)
    for name, g, alpha, error in meta:
        if error is not None:
            rows.append(_error_row(name, error))
            ok = False
            continue
        outcome = next(it)
        if isinstance(outcome, Exception):
            rows.append(_error_row(name, str(outcome)))
            ok = False
            continue
        rows.append(_bound_row(g, alpha, outcome.procedure, outcome,
                               args.with_times))
        if outcome.status not in COMPLETED:
            ok = False
    _emit(rows, args.format)
    return 0 if ok else 1


def _run_jobs(fn, jobs, workers):
    """Run jobs in order, trapping per-job exceptions as results."""
    def guarded(job):
        try:
            return fn(job)
        except Exception as exc:
            return exc
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_GuardedCall(fn), jobs))
    return [guarded(job) for job in jobs]


class _GuardedCall:
    """Picklable wrapper so worker exceptions come back as values."""

    def __init__(self, fn):
        self.fn = fn

    def __call__(self, job):
        try:
            return self.fn(job)
        except Exception as exc:
            return exc


def cmd_separate(args) -> int:
    g = load_instance(args.graph, args.complement)
    point = _parse_point(args.point, g.n)
    procs = _parse_procs(args.proc)
    params = _build_params(args)
    rows, payload, ok = [], [], True
    for procedure in procs:
        if procedure == "clique":
            raise SystemExit("separate needs a lifting procedure; "
                             "use --proc b or --proc s")
        rng = random.Random(_derived_seed(args.seed, procedure))
        outcome = sep_for_stab(g, point, params=params,
                               procedure=procedure, rng=rng)
        print("%s: %d cuts from %d iterations, %d projections, %d failed"
              % (procedure, len(outcome.cuts), outcome.iterations_used,
                 outcome.projections_performed, outcome.failed_iterations),
              file=sys.stderr)
        for i, cut in enumerate(outcome.cuts):
            ineq = cut.inequality
            try:
                report = check_validity(g, ineq, time_budget=30.0)
                verdict = "valid" if report.valid else "INVALID"
            except LiftingAborted:
                verdict = "unverified"
            if verdict != "valid":
                ok = False
            rows.append([procedure, str(i), "%.6f" % ineq.violation(point),
                         verdict, ineq.to_text()])
            payload.append({"procedure": procedure,
                            "violation": round(ineq.violation(point), 9),
                            "verdict": verdict,
                            "cut": json.loads(cut_to_json(cut))})
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=1) + "\n")
    else:
        _emit(rows, args.format,
              header=["procedure", "index", "violation", "verdict", "cut"])
    return 0 if ok else 1


def cmd_verify(args) -> int:
    g = load_instance(args.graph, args.complement)
    point = _parse_point(args.point, g.n) if args.point else None
    rows, ok = [], True
    for path in args.cuts:
        try:
            with open(path) as fh:
                text = fh.read()
            data = json.loads(text)
            if isinstance(data, dict) and "inequality" in data:
                cut = cut_from_json(text)
                ineq = cut.inequality
                replay = "consistent" if replay_consistent(cut) else "MISMATCH"
            else:
                ineq = Inequality.from_json(text)
                replay = ""
        except Exception as exc:
            rows.append([path, "error: %s" % exc, "", "", "", "", "", ""])
            ok = False
            continue
        try:
            report = check_validity(g, ineq, time_budget=args.time_limit)
        except LiftingAborted:
            rows.append([path, "unverified", "", "", "", replay, "", ""])
            ok = False
            continue
        verdict = "valid" if report.valid else "INVALID"
        if not report.valid:
            ok = False
        viol = "%.6f" % ineq.violation(point) if point is not None else ""
        facet = ""
        if report.valid and g.n <= ORACLE_LIMIT:
            whole = face_dimension(g, [])
            tight = face_dimension(g, [ineq])
            facet = str(tight.affine_dim == whole.affine_dim - 1)
        witness = "" if report.valid else " ".join(map(str, report.witness))
        rows.append([path, verdict, str(report.lhs_max), str(ineq.rhs),
                     witness, replay, viol, facet])
    _emit(rows, args.format,
          header=["file", "verdict", "lhs_max", "rhs", "witness", "replay",
                  "violation", "facet"])
    return 0 if ok else 1


def cmd_facet_check(args) -> int:
    with open(args.trace) as fh:
        trace = trace_from_json(fh.read())
    seed = _parse_vertices(args.lift_seed) if args.lift_seed else None
    witnesses = []
    if args.witness:
        with open(args.witness) as fh:
            payload = json.load(fh)
        witnesses.append(witness_from_trace(
            trace, [tuple(c) for c in payload["classes"]],
            tuple(payload["representative"])
            if payload.get("representative") else None))
    elif args.find:
        witnesses = find_witnesses(trace, seed=seed)
        print("found %d witnesses" % len(witnesses), file=sys.stderr)
    else:
        raise SystemExit("facet-check needs a witness file or --find")

    reports = []
    for witness in witnesses:
        entry = {"k": witness.k,
                 "classes": [list(c) for c in witness.classes]}
        if witness.representative is not None:
            entry["representative"] = list(witness.representative)
        entry["conditions"] = condition_report(trace, witness, seed=seed)
        entry["predicted_facet"] = all(entry["conditions"].values())
        if trace.base.n <= ORACLE_LIMIT and seed is not None:
            cut = strengthened_lift(trace, seed=seed)
            rep = facet_report(trace, witness, cut, trace.r, seed=seed)
            entry["cut"] = cut.inequality.to_text()
            entry["dim_face"] = rep.dim_face
            entry["dim_tight"] = rep.dim_tight
            entry["facet"] = rep.facet
            entry["prediction_agrees"] = rep.agrees
        elif trace.base.n <= ORACLE_LIMIT:
            eqs = [clique_inequality(w) for w in trace.cliques]
            entry["dim_face"] = face_dimension(trace.base, eqs).affine_dim
        reports.append(entry)

    if args.format == "csv":
        rows = []
        for i, entry in enumerate(reports):
            for key in sorted(entry):
                rows.append([str(i), key, json.dumps(entry[key])])
        _emit(rows, "csv", header=["witness", "key", "value"])
    elif args.format == "json":
        sys.stdout.write(json.dumps(reports, indent=1) + "\n")
    else:
        for i, entry in enumerate(reports):
            print("witness %d: classes=%s" % (i, entry["classes"]))
            for key in sorted(entry):
                if key != "classes":
                    print("  %s: %s" % (key, entry[key]))
    return 0


def _bench_job(job):
    n, density, rep_seed, run_seed, procedure, params, time_limit = job
    g = random_graph(n, density, seed=rep_seed)
    report = cutting_plane_run(g, params=params, procedure=procedure,
                               time_limit=time_limit, seed=run_seed)
    alpha = None
    if n <= EXACT_ALPHA_LIMIT:
        res = maximum_stable_set(g)
        if res.proven_optimal:
            alpha = int(res.best_value)
    return _density(g), alpha, report


def cmd_bench(args) -> int:
    procs = _parse_procs(args.proc)
    params = _build_params(args)
    sizes = [int(s) for s in args.sizes.split(",")]
    densities = [float(d) for d in args.densities.split(",")]
    jobs, keys = [], []
    for n in sizes:
        for d in densities:
            for procedure in procs:
                for rep in range(args.reps):
                    cell = "G(%d,%g)#%d" % (n, d, rep)
                    rep_seed = _derived_seed(args.seed, cell)
                    run_seed = _derived_seed(args.seed,
                                             cell + ":" + procedure)
                    jobs.append((n, d, rep_seed, run_seed, procedure,
                                 params, args.time_limit))
                    keys.append((n, d, procedure))

    results = _run_jobs(_bench_job, jobs, args.jobs)
    rows, ok = [], True
    groups = {}
    for key, res in zip(keys, results):
        groups.setdefault(key, []).append(res)
    for n in sizes:
        for d in densities:
            for procedure in procs:
                batch = groups[(n, d, procedure)]
                errors = [r for r in batch if isinstance(r, Exception)]
                if errors:
                    rows.append(_error_row("G(%d,%g)" % (n, d),
                                           str(errors[0])))
                    ok = False
                    continue
                dens = [b[0] for b in batch]
                alphas = [b[1] for b in batch]
                reps = [b[2] for b in batch]
                statuses = {r.status for r in reps}
                status = statuses.pop() if len(statuses) == 1 else "mixed"
                if not all(r.status in COMPLETED for r in reps):
                    ok = False
                alpha = ("%.2f" % (sum(alphas) / len(alphas))
                         if all(a is not None for a in alphas) else "")
                mean = lambda vals: sum(vals) / len(vals)
                counts = lambda kind: mean([r.cut_counts.get(kind, 0)
                                            for r in reps])
                rows.append([
                    "G(%d,%g)" % (n, d), str(n), "%.4f" % mean(dens), alpha,
                    procedure, str(len(reps)),
                    "%.2f" % mean([r.lower_bound for r in reps]),
                    "%.6f" % mean([r.z0 for r in reps]),
                    "%.6f" % mean([r.bound for r in reps]),
                    "%.2f" % counts("clique"), "%.2f" % counts("rank"),
                    "%.2f" % counts("weighted"), status,
                    "%.2f" % mean([r.wall_time for r in reps])
                    if args.with_times else ""])
    _emit(rows, args.format)
    return 0 if ok else 1


def _add_param_flags(sub):
    sub.add_argument("--min-violation", type=float, default=None,
                     help="violation threshold for keeping a cut")
    sub.add_argument("--min-depth", type=int, default=None,
                     help="projections to perform before stopping the walk")
    sub.add_argument("--max-depth", type=int, default=None,
                     help="hard cap on projections per walk")
    sub.add_argument("--max-iter", type=int, default=None,
                     help="separation iterations per call")
    sub.add_argument("--max-ncuts", type=int, default=None,
                     help="stop once this many cuts are collected")
    sub.add_argument("--tomita-period", type=int, default=None,
                     help="use bounded exact clique enumeration every k-th "
                          "projection")


def _add_common(sub, complement_default):
    sub.add_argument("--format", choices=["csv", "json", "text"],
                     default="csv")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--time-limit", type=float, default=120.0)
    if complement_default:
        sub.add_argument("--no-complement", dest="complement",
                         action="store_false", default=True,
                         help="solve the instance as stated instead of its "
                              "complement")
    else:
        sub.add_argument("--complement", action="store_true", default=False,
                         help="solve the complement of the instance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stabcut",
        description="Cutting plane bounds for the maximum stable set "
                    "problem via clique projection and lifting.")
    subs = parser.add_subparsers(dest="command", required=True)

    b = subs.add_parser("bound", help="bound DIMACS or named instances")
    b.add_argument("instances", nargs="+")
    b.add_argument("--proc", default="c,b,s",
                   help="comma list from c (clique cuts only), b (basic "
                        "lifting), s (strengthened lifting)")
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--with-times", action="store_true")
    _add_common(b, complement_default=True)
    _add_param_flags(b)
    b.set_defaults(fn=cmd_bound)

    s = subs.add_parser("separate", help="separate one fractional point")
    s.add_argument("graph")
    s.add_argument("--point", required=True,
                   help="comma separated values, or @file with a JSON list")
    s.add_argument("--proc", default="s")
    _add_common(s, complement_default=False)
    _add_param_flags(s)
    s.set_defaults(fn=cmd_separate)

    v = subs.add_parser("verify", help="verify serialized cuts against a "
                                       "graph")
    v.add_argument("graph")
    v.add_argument("cuts", nargs="+", help="cut JSON files")
    v.add_argument("--point", default=None)
    _add_common(v, complement_default=False)
    v.set_defaults(fn=cmd_verify)

    f = subs.add_parser("facet-check", help="check facet conditions on a "
                                            "serialized trace")
    f.add_argument("trace", help="trace JSON file")
    f.add_argument("--witness", default=None,
                   help="witness JSON file with classes and optional "
                        "representative")
    f.add_argument("--find", action="store_true",
                   help="search for witnesses instead of reading one")
    f.add_argument("--lift-seed", default=None,
                   help="comma separated seed clique for the lifted cut")
    f.add_argument("--format", choices=["csv", "json", "text"],
                   default="text")
    f.set_defaults(fn=cmd_facet_check)

    r = subs.add_parser("bench", help="random graph suite")
    r.add_argument("--sizes", default="20,30")
    r.add_argument("--densities", default="0.3,0.5")
    r.add_argument("--reps", type=int, default=5,
                   help="instances per cell")
    r.add_argument("--proc", default="c,b,s")
    r.add_argument("--jobs", type=int, default=1)
    r.add_argument("--with-times", action="store_true")
    _add_common(r, complement_default=False)
    _add_param_flags(r)
    r.set_defaults(fn=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())
