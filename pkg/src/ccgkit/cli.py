"""Command-line interface: gen / solve / bench / profile / validate."""

from __future__ import annotations

import argparse
import json
import sys
import warnings

import numpy as np

from . import bench, drorsp
from .engine import CcgParams, IccgParams, solve_ccg, solve_iccg
from .errors import CcgkitError, ParamError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_SOLVE = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _add_solver_flags(p: argparse.ArgumentParser):
    p.add_argument("--method", choices=("ccg", "iccg"), default="iccg")
    p.add_argument("--eps", type=float, default=0.02,
                   help="target relative optimality gap")
    p.add_argument("--eps-tilde", type=float, default=0.015,
                   help="inexact-gap threshold triggering backtracking")
    p.add_argument("--eps-mp", type=float, default=0.02,
                   help="initial master relative-gap tolerance")
    p.add_argument("--alpha", type=float, default=0.8,
                   help="master-tolerance shrink factor per backtrack")
    p.add_argument("--tau", type=float, default=None,
                   help="master time limit in seconds")
    p.add_argument("--beta", type=float, default=None,
                   help="master time-limit increment per backtrack")
    p.add_argument("--exploit-freq", type=int, default=None,
                   help="force a backtrack after this many explorations "
                        "without a bound improvement")
    p.add_argument("--conservative-lb", action="store_true",
                   help="carry the solver bound instead of the incumbent "
                        "value between masters")
    p.add_argument("--max-iter", type=int, default=500)
    p.add_argument("--time-budget", type=float, default=None,
                   help="overall wall-clock cap in seconds")
    p.add_argument("--seed", type=int, default=0)


def _params_from_args(args):
    if args.method == "ccg":
        return CcgParams(epsilon=args.eps, max_iterations=args.max_iter,
                         time_budget=args.time_budget)
    return IccgParams(
        epsilon=args.eps, epsilon_tilde=args.eps_tilde,
        eps_mp_initial=args.eps_mp, alpha=args.alpha,
        conservative_bound_update=args.conservative_lb,
        exploit_frequency=args.exploit_freq,
        master_time_limit=args.tau, time_limit_increment=args.beta,
        max_iterations=args.max_iter, time_budget=args.time_budget)


def _write(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _cmd_gen(args) -> int:
    spec = bench.GenSpec(
        seed=args.seed, num_surgeries=args.surgeries, num_ors=args.ors,
        percentile_pair=tuple(int(v) for v in args.pcts.split("-")),
        c_f=args.cf, c_v=args.cv, samples_per_type=args.samples, T=args.T)
    instance = bench.generate_instance(spec)
    _write(args.output, drorsp.instance_to_json(instance))
    return EXIT_OK


def _cmd_solve(args) -> int:
    with open(args.instance) as fh:
        instance = drorsp.instance_from_json(fh.read())
    params = _params_from_args(args)
    builder = drorsp.DrorspMasterBuilder(instance)
    oracle = drorsp.DrorspOracle(instance)
    solve = solve_ccg if args.method == "ccg" else solve_iccg
    report = solve(builder, oracle, params)
    fs = report.final_decision["first_stage"] if report.final_decision else None
    doc = {
        "method": report.method,
        "termination": report.termination,
        "value": report.final_value,
        "lower_bound": report.valid_lower_bound,
        "actual_gap": report.actual_gap,
        "masters_solved": len(report.iterations),
        "explores": report.num_explores,
        "exploits": report.num_exploits,
        "wall_time_s": report.wall_time_s,
        "open_ors": None if fs is None else int(fs.x.sum()),
        "x": None if fs is None else fs.x.tolist(),
        "assignment": None if fs is None else
            [int(np.argmax(row)) for row in fs.y],
    }
    _write(args.report, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    if args.iterations:
        _write(args.iterations, report.iterations_csv(args.run_id))
    return EXIT_OK if report.converged else EXIT_SOLVE


def _cmd_bench(args) -> int:
    with open(args.matrix) as fh:
        doc = json.load(fh)
    cells = []
    for cell in doc["cells"]:
        spec = bench.GenSpec(**cell["spec"])
        method = cell["method"]
        pdoc = dict(cell.get("params", {}))
        if method == "ccg":
            params = CcgParams(**pdoc)
        else:
            params = IccgParams(**pdoc)
        cells.append({"spec": spec, "method": method, "params": params})
    wall_cap = float(doc.get("wall_cap", args.wall_cap))
    rows = bench.run_experiment(cells, wall_cap=wall_cap, workers=args.workers)
    _write(args.output, bench.rows_to_csv(rows, wall_cap))
    return EXIT_OK


def _cmd_profile(args) -> int:
    with open(args.results) as fh:
        rows = bench.rows_from_csv(fh.read())
    thresholds = [float(v) for v in args.thresholds.split(",")]
    groups: dict[tuple, list] = {}
    for row in rows:
        groups.setdefault((row.method, row.epsilon), []).append(row)
    curves = []
    for (method, eps), grp in sorted(groups.items()):
        try:
            curves.append(bench.performance_profile(
                grp, args.metric, thresholds,
                {"method": method, "eps": eps,
                 "label": f"{method} eps={eps:g}"}))
        except CcgkitError:
            continue  # e.g. no capped runs in this group for a gap profile
    if not curves:
        print("error: no curves could be built from the results",
              file=sys.stderr)
        return EXIT_SOLVE
    _write(args.csv, bench.curves_to_csv(curves))
    if args.svg:
        _write(args.svg, bench.render_profile_svg(curves))
    return EXIT_OK


def _cmd_validate(args) -> int:
    with open(args.instance) as fh:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            instance = drorsp.instance_from_json(fh.read())
    checks = {
        "surgeries": instance.n_surgeries,
        "ors": instance.num_ors,
        "support_contains_mean": bool(np.all(instance.dlo <= instance.mu)
                                      and np.all(instance.mu <= instance.dhi)),
        "mad_nonnegative": bool(np.all(instance.nu >= 0)),
        "mad_within_support_radius": bool(np.all(
            instance.nu <= np.maximum(instance.mu - instance.dlo,
                                      instance.dhi - instance.mu) + 1e-12)),
        "enough_surgeries_for_symmetry": instance.n_surgeries >= instance.num_ors,
        "warnings": [str(w.message) for w in caught],
    }
    checks["ok"] = all(v for k, v in checks.items()
                       if k.startswith(("support", "mad", "enough")))
    _write(args.report, json.dumps(checks, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="ccgkit",
                     description="Two-stage robust optimization via exact and "
                                 "inexact column-and-constraint generation")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a seeded scheduling instance")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--surgeries", type=int, default=10)
    g.add_argument("--ors", type=int, default=2)
    g.add_argument("--pcts", choices=("20-80", "10-90"), default="20-80")
    g.add_argument("--cf", type=float, default=1.0)
    g.add_argument("--cv", type=float, default=1.0 / 30.0)
    g.add_argument("--samples", type=int, default=500)
    g.add_argument("--T", type=float, default=480.0)
    g.add_argument("-o", "--output", default="-")
    g.set_defaults(func=_cmd_gen)

    s = sub.add_parser("solve", help="solve an instance")
    s.add_argument("instance")
    _add_solver_flags(s)
    s.add_argument("--report", default="-")
    s.add_argument("--iterations", default=None,
                   help="write the per-iteration CSV here")
    s.add_argument("--run-id", default="run")
    s.set_defaults(func=_cmd_solve)

    b = sub.add_parser("bench", help="run an experiment matrix")
    b.add_argument("matrix")
    b.add_argument("-o", "--output", default="-")
    b.add_argument("--wall-cap", type=float, default=bench.DEFAULT_WALL_CAP)
    b.add_argument("--workers", type=int, default=1)
    b.set_defaults(func=_cmd_bench)

    p = sub.add_parser("profile", help="performance profiles from results")
    p.add_argument("results")
    p.add_argument("--metric", choices=("time", "gap"), default="time")
    p.add_argument("--thresholds", default="1,5,15,30,60,120")
    p.add_argument("--csv", default="-")
    p.add_argument("--svg", default=None)
    p.set_defaults(func=_cmd_profile)

    v = sub.add_parser("validate", help="check instance assumptions")
    v.add_argument("instance")
    v.add_argument("--report", default="-")
    v.set_defaults(func=_cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ParamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CcgkitError, OSError, ValueError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SOLVE


if __name__ == "__main__":
    raise SystemExit(main())
