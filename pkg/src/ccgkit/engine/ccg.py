"""Exact column-and-constraint generation.

Each iteration solves the scenario-pool master to optimality, queries the
worst-case oracle at the resulting first stage, tightens the upper bound,
and either stops at the target relative gap or adds the new scenario.
"""

from __future__ import annotations

import time

import numpy as np

from ..errors import MasterInfeasible, NumericalFailure, OracleFailure
from ..milp import GAP_DENOM_FLOOR, SolveControls, Status, solve_milp
from .interfaces import MasterBuilder, MasterSolver, ScenarioRegistry, WorstCaseOracle
from .params import CcgParams
from .report import IterationRecord, SolveReport

_NO_INCUMBENT_RETRIES = 3


def _gap(upper: float, lower: float) -> float:
    if np.isinf(upper):
        return np.inf
    return (upper - lower) / max(upper, GAP_DENOM_FLOOR)


def solve_master(model, controls: SolveControls, master_solver: MasterSolver | None):
    """Solve a master model, insisting on an incumbent.

    A time- or node-limited solve can stop before finding any feasible
    point; retry with a relaxed limit rather than losing the run.
    """
    solver = master_solver or solve_milp
    out = solver(model, controls)
    if out.status in (Status.INFEASIBLE, Status.UNBOUNDED):
        raise MasterInfeasible(f"master solve ended {out.status.value}")
    tries = 0
    while not out.has_incumbent:
        tries += 1
        if tries > _NO_INCUMBENT_RETRIES or controls.time_limit is None:
            raise NumericalFailure("master solve produced no incumbent")
        controls = SolveControls(rel_gap=controls.rel_gap,
                                 time_limit=2.0 * controls.time_limit * tries,
                                 node_limit=controls.node_limit)
        out = solver(model, controls)
        if out.status in (Status.INFEASIBLE, Status.UNBOUNDED):
            raise MasterInfeasible(f"master solve ended {out.status.value}")
    return out


def solve_ccg(builder: MasterBuilder, oracle: WorstCaseOracle,
              params: CcgParams | None = None,
              master_solver: MasterSolver | None = None) -> SolveReport:
    params = params or CcgParams()
    start = time.monotonic()
    registry = ScenarioRegistry()
    pool = []           # scenario objects currently in the master
    pool_ids = set()
    lower = 0.0
    upper = np.inf
    best = None         # decoded master solution achieving `upper`
    records: list[IterationRecord] = []
    termination = "IterationCap"

    for order in range(1, params.max_iterations + 1):
        if params.time_budget is not None and \
                time.monotonic() - start > params.time_budget:
            termination = "TimeBudget"
            break
        t0 = time.monotonic()
        model = builder.build(pool, 0.0)
        out = solve_master(model, SolveControls(rel_gap=0.0), master_solver)
        master_ms = 1e3 * (time.monotonic() - t0)
        decoded = builder.extract(out.incumbent)
        lower = max(lower, float(out.incumbent_value))

        t1 = time.monotonic()
        xi_star, value = oracle.query(decoded)
        sub_ms = 1e3 * (time.monotonic() - t1)
        sc = registry.get(xi_star)
        candidate = float(decoded["first_stage_cost"]) + float(value)
        if candidate < upper:
            upper = candidate
            best = decoded

        gap = _gap(upper, lower)
        if gap < params.epsilon:
            records.append(IterationRecord(
                order=order, index=order, ell=order, L_ell=lower,
                decision="Terminate", L=lower, U=float(out.incumbent_value),
                L_bar=0.0, U_bar=upper, gap_actual=gap, gap_inexact=gap,
                eps_mp=0.0, scenario_id=sc.id, scenario_added=-1,
                master_status=out.status.value, master_ms=master_ms,
                sub_ms=sub_ms))
            termination = "Converged"
            break
        if sc.id in pool_ids:
            # an exact master over a pool containing the worst case closes
            # the gap; reaching here means the oracle is inconsistent
            raise OracleFailure(
                f"oracle returned scenario {sc.id} already in the pool "
                f"without closing the gap ({gap:.3g} >= {params.epsilon:.3g})")
        records.append(IterationRecord(
            order=order, index=order, ell=order, L_ell=lower,
            decision="Explore", L=lower, U=float(out.incumbent_value),
            L_bar=0.0, U_bar=upper, gap_actual=gap, gap_inexact=gap,
            eps_mp=0.0, scenario_id=sc.id, scenario_added=sc.id,
            master_status=out.status.value, master_ms=master_ms,
            sub_ms=sub_ms))
        pool.append(sc)
        pool_ids.add(sc.id)

    return SolveReport(
        method="ccg",
        termination=termination,
        final_x=None if best is None else np.asarray(best["x"], dtype=float),
        final_value=upper,
        valid_lower_bound=lower,
        actual_gap=_gap(upper, lower),
        iterations=records,
        exploit_events=[],
        scenarios=[(s.id, s.xi.tolist()) for s in registry.all()],
        wall_time_s=time.monotonic() - start,
        final_decision=best,
    )
