"""Experiment matrix runner emitting the results CSV."""

from __future__ import annotations

import concurrent.futures
import io
import warnings
from dataclasses import dataclass, replace

import numpy as np

from ..drorsp import DrorspMasterBuilder, DrorspOracle
from ..engine import CcgParams, IccgParams, solve_ccg, solve_iccg
from ..errors import SpecError
from .generate import GenSpec, generate_instance

RESULT_HEADER = ("run_id,method,seed,nI,nR,pcts,cf,cv,eps,status,time_s,"
                 "final_gap,iters,exploits,explores")
DEFAULT_WALL_CAP = 120.0  # per-run seconds; desk-scale stand-in for 2 hours


@dataclass
class ResultRow:
    run_id: str
    method: str
    seed: int
    n_surgeries: int
    n_ors: int
    percentiles: tuple[int, int]
    c_f: float
    c_v: float
    epsilon: float
    status: str
    time_s: float
    final_gap: float
    iters: int
    exploits: int
    explores: int

    def to_csv_line(self) -> str:
        gap = "inf" if np.isinf(self.final_gap) else f"{self.final_gap:.8g}"
        return (f"{self.run_id},{self.method},{self.seed},{self.n_surgeries},"
                f"{self.n_ors},{self.percentiles[0]}-{self.percentiles[1]},"
                f"{self.c_f:.8g},{self.c_v:.8g},{self.epsilon:.8g},"
                f"{self.status},{self.time_s:.3f},{gap},{self.iters},"
                f"{self.exploits},{self.explores}")


def _run_cell(idx: int, cell: dict, wall_cap: float) -> ResultRow:
    spec: GenSpec = cell["spec"]
    method: str = cell["method"]
    params = cell["params"]
    run_id = f"{idx:04d}-{method}-s{spec.seed}"
    if params.time_budget is None or params.time_budget > wall_cap:
        params = replace(params, time_budget=wall_cap)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            instance = generate_instance(spec)
            builder = DrorspMasterBuilder(instance)
            oracle = DrorspOracle(instance)
            if method == "ccg":
                report = solve_ccg(builder, oracle, params)
            elif method == "iccg":
                report = solve_iccg(builder, oracle, params)
            else:
                raise SpecError(f"unknown method {method!r}")
        return ResultRow(
            run_id, method, spec.seed, spec.num_surgeries, spec.num_ors,
            spec.percentile_pair, spec.c_f, spec.c_v, params.epsilon,
            report.termination, report.wall_time_s, report.actual_gap,
            len(report.iterations), report.num_exploits, report.num_explores)
    except Exception as exc:  # a broken cell must not abort the matrix
        return ResultRow(
            run_id, method, spec.seed, spec.num_surgeries, spec.num_ors,
            spec.percentile_pair, spec.c_f, spec.c_v,
            getattr(params, "epsilon", float("nan")),
            f"Error:{type(exc).__name__}", 0.0, np.inf, 0, 0, 0)


def run_experiment(matrix: list[dict], wall_cap: float = DEFAULT_WALL_CAP,
                   workers: int = 1) -> list[ResultRow]:
    """Solve every cell; output order matches input order regardless of
    completion order. Each cell is {"spec": GenSpec, "method": str,
    "params": CcgParams|IccgParams}."""
    if workers <= 1:
        return [_run_cell(i, cell, wall_cap) for i, cell in enumerate(matrix)]
    with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
        futures = {pool.submit(_run_cell, i, cell, wall_cap): i
                   for i, cell in enumerate(matrix)}
        results: dict[int, ResultRow] = {}
        for fut in concurrent.futures.as_completed(futures):
            results[futures[fut]] = fut.result()
    return [results[i] for i in range(len(matrix))]


def rows_to_csv(rows: list[ResultRow], wall_cap: float = DEFAULT_WALL_CAP) -> str:
    out = io.StringIO()
    out.write("# desk-scale protocol: |I| in 8..14, |R| in 2..3, "
              f"per-run wall cap {wall_cap:g}s\n")
    out.write(RESULT_HEADER + "\n")
    for row in rows:
        out.write(row.to_csv_line() + "\n")
    return out.getvalue()


def rows_from_csv(text: str) -> list[ResultRow]:
    rows = []
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    if not lines or lines[0] != RESULT_HEADER:
        raise SpecError("unrecognized results CSV header")
    for ln in lines[1:]:
        (run_id, method, seed, n_i, n_r, pcts, cf, cv, eps, status, time_s,
         gap, iters, exploits, explores) = ln.split(",")
        lo, hi = pcts.split("-")
        rows.append(ResultRow(
            run_id, method, int(seed), int(n_i), int(n_r),
            (int(lo), int(hi)), float(cf), float(cv), float(eps), status,
            float(time_s), float(gap), int(iters), int(exploits),
            int(explores)))
    return rows
