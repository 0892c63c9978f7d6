"""Inexact column-and-constraint generation with backtracking.

Masters are solved only to a relative gap eps_mp (optionally under a time
limit tau). The loop keeps two gaps: the actual gap against the last
certified lower bound L^ell, and the inexact gap against the current
master incumbent. When the inexact gap closes but the actual one has not,
the loop backtracks ("exploits"): it rewinds to iteration ell, restores
the certified cutoff, tightens the master tolerance by alpha, and extends
tau by beta. Otherwise it adds the worst-case scenario ("explores").

The cutoff constraint (objective >= L_bar) is what lets a later master
solve inherit earlier certified bounds even though its own gap is loose.
"""

from __future__ import annotations

import time

import numpy as np

from ..errors import DomainError, OracleFailure
from ..milp import GAP_DENOM_FLOOR, SolveControls, Status
from .ccg import solve_master
from .interfaces import MasterBuilder, MasterSolver, ScenarioRegistry, WorstCaseOracle
from .params import IccgParams
from .report import ExploitEvent, IterationRecord, SolveReport

TERMINATE = "Terminate"
EXPLOIT = "Exploit"
EXPLORE = "Explore"


def backtrack_decision(u_bar: float, l_ell: float, u_j: float,
                       epsilon: float, epsilon_tilde: float) -> str:
    """Pure decision rule: Terminate on the actual gap, Exploit on the
    inexact gap, otherwise Explore."""
    denom = max(u_bar, GAP_DENOM_FLOOR)
    if np.isinf(u_bar):
        return EXPLORE
    if (u_bar - l_ell) / denom < epsilon:
        return TERMINATE
    if (u_bar - u_j) / denom < epsilon_tilde:
        return EXPLOIT
    return EXPLORE


def prop2_gap_bound(epsilon_tilde: float, eps_mp_seq) -> float:
    """Worst-case actual gap at an exploitation step:
    (1 - eps_tilde)^-1 * prod_k (1 - eps_mp_k)^-1 - 1."""
    if not 0.0 <= epsilon_tilde < 1.0:
        raise DomainError("epsilon_tilde must lie in [0, 1)")
    prod = 1.0 - epsilon_tilde
    for e in eps_mp_seq:
        if not 0.0 <= e < 1.0:
            raise DomainError("eps_mp entries must lie in [0, 1)")
        prod *= 1.0 - e
    return 1.0 / prod - 1.0


def _met_gap(out, target: float) -> bool:
    if out.status is Status.OPTIMAL:
        return True
    gap = out.rel_gap_achieved
    return bool(np.isfinite(gap) and gap <= target + 1e-9)


def solve_iccg(builder: MasterBuilder, oracle: WorstCaseOracle,
               params: IccgParams | None = None,
               master_solver: MasterSolver | None = None) -> SolveReport:
    params = params or IccgParams()
    start = time.monotonic()
    registry = ScenarioRegistry()
    seq: list = []              # exploration sequence; master j sees seq[:j-1]
    l_rec = {0: 0.0}            # valid lower bound by iteration index
    eps_rec: dict[int, float] = {}
    cert_rec: dict[int, bool] = {}
    l_bar = 0.0
    u_bar = np.inf
    ell = 0
    j = 1
    eps_mp = params.eps_mp_initial
    tau = params.master_time_limit
    # with exact masters (zero tolerance, no time limits) every bound is
    # tight, so the carried cutoff can never cut anything; omit it so the
    # loop reduces to the exact method bit-for-bit (same masters, same
    # tie-breaking among degenerate optima)
    masters_exact = (params.eps_mp_initial == 0.0 and tau is None
                     and params.time_budget is None)
    best = None
    records: list[IterationRecord] = []
    events: list[ExploitEvent] = []
    termination = "IterationCap"

    for order in range(1, params.max_iterations + 1):
        remaining = None
        if params.time_budget is not None:
            remaining = params.time_budget - (time.monotonic() - start)
            if remaining <= 0:
                termination = "TimeBudget"
                break
        limit = tau
        if remaining is not None:
            limit = remaining if limit is None else min(limit, remaining)

        t0 = time.monotonic()
        l_bar_in = l_bar
        model = builder.build(seq[: j - 1], 0.0 if masters_exact else l_bar)
        out = solve_master(model, SolveControls(rel_gap=eps_mp, time_limit=limit),
                           master_solver)
        master_ms = 1e3 * (time.monotonic() - t0)
        decoded = builder.extract(out.incumbent)
        u_j = float(out.incumbent_value)
        l_j = max(float(out.best_bound), l_bar)
        l_rec[j] = l_j
        eps_rec[j] = eps_mp
        cert_rec[j] = _met_gap(out, eps_mp)
        if l_j > l_bar or params.conservative_bound_update:
            # in conservative mode the carried cutoff is itself a valid
            # lower bound, so the anchor moves every iteration
            ell = j
        l_bar = l_j if params.conservative_bound_update else u_j

        t1 = time.monotonic()
        xi_star, value = oracle.query(decoded)
        sub_ms = 1e3 * (time.monotonic() - t1)
        sc = registry.get(xi_star)
        candidate = float(decoded["first_stage_cost"]) + float(value)
        if candidate < u_bar:
            u_bar = candidate
            best = decoded

        l_ell = l_rec[ell]
        decision = backtrack_decision(u_bar, l_ell, u_j,
                                      params.epsilon, params.epsilon_tilde)
        freq = False
        if decision == EXPLORE and params.exploit_frequency is not None \
                and j - ell > params.exploit_frequency:
            decision = EXPLOIT
            freq = True

        denom = max(u_bar, GAP_DENOM_FLOOR)
        gap_actual = (u_bar - l_ell) / denom
        gap_inexact = (u_bar - u_j) / denom
        records.append(IterationRecord(
            order=order, index=j, ell=ell, L_ell=l_ell, decision=decision,
            L=l_j, U=u_j, L_bar=l_bar_in, U_bar=u_bar, gap_actual=gap_actual,
            gap_inexact=gap_inexact, eps_mp=eps_rec[j], scenario_id=sc.id,
            scenario_added=sc.id if decision == EXPLORE else -1,
            master_status=out.status.value, master_ms=master_ms,
            sub_ms=sub_ms))

        if decision == TERMINATE:
            termination = "Converged"
            break
        if decision == EXPLOIT:
            if len(events) >= params.max_exploitations:
                termination = "ExploitationCap"
                break
            lo = max(ell, 1)
            events.append(ExploitEvent(
                order=order, ell=ell, j=j, gap_actual=gap_actual,
                eps_mp_seq=[eps_rec[k] for k in range(lo, j + 1)],
                freq_triggered=freq,
                certified=ell >= 1 and all(cert_rec.get(k, False)
                                           for k in range(lo, j + 1))))
            j = lo
            l_bar = l_rec[ell]
            eps_mp *= params.alpha
            if tau is not None and params.time_limit_increment is not None:
                tau += params.time_limit_increment
        else:  # Explore
            if any(s.id == sc.id for s in seq[: j - 1]):
                raise OracleFailure(
                    f"scenario {sc.id} already in the pool at an Explore "
                    "step; with a positive epsilon_tilde this cannot happen")
            seq = seq[: j - 1] + [sc]
            j += 1

    return SolveReport(
        method="iccg",
        termination=termination,
        final_x=None if best is None else np.asarray(best["x"], dtype=float),
        final_value=u_bar,
        valid_lower_bound=l_rec[ell],
        actual_gap=(u_bar - l_rec[ell]) / max(u_bar, GAP_DENOM_FLOOR)
        if np.isfinite(u_bar) else np.inf,
        iterations=records,
        exploit_events=events,
        scenarios=[(s.id, s.xi.tolist()) for s in registry.all()],
        wall_time_s=time.monotonic() - start,
        final_decision=best,
    )
