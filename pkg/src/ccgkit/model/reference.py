"""Reference evaluation utilities: recourse LP, finite worst case,
extensive-form optimum, and assumption spot checks.

These are the independent oracles the decomposition algorithms are tested
against; they only depend on the LP/MILP engine, never on the engine
module.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import (CapExceeded, InfeasibleProblem, InfeasibleRecourse,
                      UnboundedRecourse)
from ..milp import (CONTINUOUS, INTEGER, LinearModel, SolveControls, Status,
                    solve_lp, solve_milp)
from .problem import Scenario, TwoStageProblem

EXTENSIVE_FORM_CAP = 64
DEFAULT_K = 1e-6


def _first_stage_columns(model: LinearModel, problem: TwoStageProblem,
                         obj: np.ndarray | None = None) -> None:
    fs = problem.first_stage
    bounds = fs.bounds or [(0.0, np.inf)] * problem.n
    integer = set(fs.integer)
    for j in range(problem.n):
        lo, hi = bounds[j]
        model.add_column(lo, hi, INTEGER if j in integer else CONTINUOUS,
                         obj=float(obj[j]) if obj is not None else 0.0,
                         name=f"x{j}")
    for i in range(fs.A.shape[0]):
        coeffs = {j: float(fs.A[i, j]) for j in range(problem.n) if fs.A[i, j] != 0.0}
        model.add_row(coeffs, fs.sense[i], float(fs.b[i]), name=f"fs{i}")


def build_recourse_lp(problem: TwoStageProblem, x, xi) -> LinearModel:
    """min q'y s.t. W y >= h - T x - C xi, y >= 0."""
    x = np.asarray(x, dtype=float)
    xi = np.asarray(xi, dtype=float)
    rhs = problem.h - problem.T_mat @ x - problem.C @ xi
    model = LinearModel()
    for k in range(problem.m):
        model.add_column(0.0, np.inf, obj=float(problem.q[k]), name=f"y{k}")
    for i in range(problem.r):
        coeffs = {k: float(problem.W[i, k]) for k in range(problem.m)
                  if problem.W[i, k] != 0.0}
        model.add_row(coeffs, ">=", float(rhs[i]), name=f"rec{i}")
    return model


def recourse_value(problem: TwoStageProblem, x, xi) -> float:
    """Optimal second-stage cost Q(x, xi)."""
    out = solve_lp(build_recourse_lp(problem, x, xi))
    if out.status is Status.INFEASIBLE:
        raise InfeasibleRecourse(
            "second-stage feasibility set empty; relatively complete "
            "recourse assumption violated")
    if out.status is Status.UNBOUNDED:
        raise UnboundedRecourse("second-stage LP unbounded")
    return float(out.incumbent_value)


def worst_case_cost(problem: TwoStageProblem, x) -> tuple[Scenario, float]:
    """Argmax of Q(x, .) over a finite uncertainty set; ties to lowest id."""
    scenarios = problem.uncertainty.as_scenarios()
    best: Scenario | None = None
    best_val = -np.inf
    for sc in scenarios:
        val = recourse_value(problem, x, sc.xi)
        if val > best_val:
            best, best_val = sc, val
    return best, float(best_val)


def build_finite_master(problem: TwoStageProblem, scenarios: list[Scenario],
                        lower_cutoff: float = 0.0) -> LinearModel:
    """Scenario-cut master: min c'x + delta with one recourse block per
    scenario and the lower-cutoff row c'x + delta >= lower_cutoff."""
    model = LinearModel()
    _first_stage_columns(model, problem, obj=problem.c)
    delta = model.add_column(-np.inf, np.inf, obj=1.0, name="delta")
    for sc in scenarios:
        ys = [model.add_column(0.0, np.inf, name=f"y{sc.id}_{k}")
              for k in range(problem.m)]
        rhs = problem.h - problem.C @ np.asarray(sc.xi, dtype=float)
        for i in range(problem.r):
            coeffs = {j: float(problem.T_mat[i, j]) for j in range(problem.n)
                      if problem.T_mat[i, j] != 0.0}
            for k in range(problem.m):
                if problem.W[i, k] != 0.0:
                    coeffs[ys[k]] = float(problem.W[i, k])
            model.add_row(coeffs, ">=", float(rhs[i]), name=f"rec{sc.id}_{i}")
        cut = {delta: 1.0}
        for k in range(problem.m):
            if problem.q[k] != 0.0:
                cut[ys[k]] = -float(problem.q[k])
        model.add_row(cut, ">=", 0.0, name=f"cut{sc.id}")
    cutoff = {delta: 1.0}
    for j in range(problem.n):
        if problem.c[j] != 0.0:
            cutoff[j] = float(problem.c[j])
    model.add_row(cutoff, ">=", float(lower_cutoff), name="lower_cutoff")
    return model


def solve_extensive_form(problem: TwoStageProblem,
                         cap: int = EXTENSIVE_FORM_CAP) -> tuple[np.ndarray, float]:
    """Exact optimum by including every scenario in the master (finite sets)."""
    scenarios = problem.uncertainty.as_scenarios()
    if len(scenarios) > cap:
        raise CapExceeded(f"|Xi| = {len(scenarios)} exceeds cap {cap}")
    model = build_finite_master(problem, scenarios, lower_cutoff=0.0)
    out = solve_milp(model, SolveControls(rel_gap=0.0))
    if out.status is Status.INFEASIBLE:
        raise InfeasibleProblem("extensive form infeasible")
    if out.status is Status.UNBOUNDED:
        raise InfeasibleProblem("extensive form unbounded")
    return out.incumbent[: problem.n].copy(), float(out.incumbent_value)


@dataclass
class Violation:
    kind: str  # "infeasible_recourse" or "below_K"
    x: np.ndarray
    xi: np.ndarray
    detail: str


@dataclass
class ValidationReport:
    samples: int
    pairs_checked: int
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _sample_first_stage(problem: TwoStageProblem, samples: int, rng) -> list[np.ndarray]:
    """Feasible first-stage points: one from min c'x, the rest from random
    objectives over the same feasible region."""
    points = []
    objs = [problem.c] + [rng.normal(size=problem.n) for _ in range(samples - 1)]
    for obj in objs:
        model = LinearModel()
        _first_stage_columns(model, problem, obj=np.asarray(obj, dtype=float))
        out = solve_milp(model, SolveControls(rel_gap=0.0))
        if out.status in (Status.OPTIMAL, Status.GAP_REACHED):
            points.append(out.incumbent[: problem.n].copy())
    return points


def _sample_scenarios(problem: TwoStageProblem, rng, max_corners: int = 32):
    uset = problem.uncertainty
    if uset.kind == "finite":
        return [np.asarray(v, dtype=float) for v in uset.scenarios]
    dim = uset.dim
    corners = []
    seen = set()
    full = 2 ** dim
    if full <= max_corners:
        for mask in range(full):
            corners.append(np.where([(mask >> i) & 1 for i in range(dim)],
                                    uset.hi, uset.lo).astype(float))
    else:
        while len(corners) < max_corners:
            pick = rng.integers(0, 2, size=dim).astype(bool)
            key = tuple(pick.tolist())
            if key in seen:
                continue
            seen.add(key)
            corners.append(np.where(pick, uset.hi, uset.lo).astype(float))
    return corners


def validate_problem(problem: TwoStageProblem, samples: int = 8,
                     K: float = DEFAULT_K, seed: int = 0) -> ValidationReport:
    """Spot-check relatively complete recourse and Q(x, xi) >= K.

    Report-only: can falsify the standing assumptions, never prove them.
    """
    rng = np.random.default_rng(seed)
    xs = _sample_first_stage(problem, max(1, samples), rng)
    xis = _sample_scenarios(problem, rng)
    report = ValidationReport(samples=len(xs), pairs_checked=0)
    for x in xs:
        for xi in xis:
            report.pairs_checked += 1
            try:
                val = recourse_value(problem, x, xi)
            except InfeasibleRecourse:
                report.violations.append(Violation(
                    "infeasible_recourse", x, xi, "empty second-stage set"))
                continue
            except UnboundedRecourse:
                report.violations.append(Violation(
                    "unbounded_recourse", x, xi, "unbounded second-stage LP"))
                continue
            if val < K:
                report.violations.append(Violation(
                    "below_K", x, xi, f"Q = {val:.6g} < K = {K:.6g}"))
    return report
