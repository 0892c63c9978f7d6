"""Branch-and-bound MILP solver on top of the bounded-variable simplex.

Node selection is best-bound first (keeps the global lower bound tight
early, which is what inexact decomposition consumes); branching picks the
most fractional integer column, ties to the lowest index. Deterministic
for fixed inputs whenever no time limit is set.
"""

from __future__ import annotations

import heapq
import time

import numpy as np

from .core import (GAP_DENOM_FLOOR, LinearModel, SolveControls, SolveOutcome,
                   Status, relative_gap)
from .simplex import Simplex, standard_form

INT_TOL = 1e-6
PRUNE_TOL = 1e-9


def solve_milp(model: LinearModel, controls: SolveControls | None = None) -> SolveOutcome:
    """Branch-and-bound solve honoring rel_gap / time_limit / node_limit."""
    controls = controls or SolveControls()
    model.validate()
    sf0 = standard_form(model)
    n_struct = sf0.n_struct
    int_cols = np.array(model.integer_columns(), dtype=np.int64)
    sign = sf0.obj_sign  # internal values are for the minimization form

    start = time.monotonic()

    def lp_solve(lb_over, ub_over):
        sf = standard_form(model)
        sf.lb[:n_struct] = lb_over
        sf.ub[:n_struct] = ub_over
        return Simplex(sf).solve(want_duals=False)

    root_lb = sf0.lb[:n_struct].copy()
    root_ub = sf0.ub[:n_struct].copy()
    status, x, obj, _, _ = lp_solve(root_lb, root_ub)
    if status == "infeasible":
        return SolveOutcome(Status.INFEASIBLE)
    if status == "unbounded":
        return SolveOutcome(Status.UNBOUNDED)

    incumbent = None
    inc_value = np.inf  # minimization-form incumbent value
    best_bound = -np.inf  # monotone global lower bound (minimization form)
    serial = 0
    heap = [(obj, serial)]
    node_data = {serial: (root_lb, root_ub, x)}
    nodes_processed = 0
    term = None

    def prune_cutoff():
        return inc_value - PRUNE_TOL * max(1.0, abs(inc_value))

    while heap:
        best_bound = max(best_bound, min(heap[0][0], inc_value))
        if incumbent is not None:
            gap = (inc_value - best_bound) / max(abs(inc_value), GAP_DENOM_FLOOR)
            if gap <= controls.rel_gap + PRUNE_TOL:
                term = Status.GAP_REACHED if controls.rel_gap > 0 else Status.OPTIMAL
                break
        if controls.time_limit is not None and \
                time.monotonic() - start > controls.time_limit:
            term = Status.TIME_LIMIT
            break
        if controls.node_limit is not None and nodes_processed >= controls.node_limit:
            term = Status.NODE_LIMIT
            break

        bound, sid = heapq.heappop(heap)
        lb, ub, x = node_data.pop(sid)
        if bound >= prune_cutoff():
            continue
        nodes_processed += 1

        if int_cols.size:
            vals = x[int_cols]
            frac = np.abs(vals - np.round(vals))
        else:
            frac = np.zeros(0)
        if not frac.size or np.all(frac <= INT_TOL):
            if bound < inc_value:
                inc_value = bound
                incumbent = x.copy()
                if int_cols.size:
                    incumbent[int_cols] = np.round(incumbent[int_cols])
            continue

        # most fractional: fractional part closest to 0.5, ties lowest index
        fpart = vals - np.floor(vals)
        cand = np.where(frac > INT_TOL)[0]
        pick = cand[int(np.argmin(np.abs(fpart[cand] - 0.5)))]
        jcol = int(int_cols[pick])
        xv = x[jcol]

        for child_dir in ("down", "up"):
            clb = lb.copy()
            cub = ub.copy()
            if child_dir == "down":
                cub[jcol] = np.floor(xv)
            else:
                clb[jcol] = np.ceil(xv)
            if clb[jcol] > cub[jcol]:
                continue
            cstatus, cx, cobj, _, _ = lp_solve(clb, cub)
            if cstatus != "optimal":
                continue
            cobj = max(cobj, bound)  # child bound never below its parent
            if cobj >= prune_cutoff():
                continue
            serial += 1
            heapq.heappush(heap, (cobj, serial))
            node_data[serial] = (clb, cub, cx)

    if term is None:
        if incumbent is None:
            return SolveOutcome(Status.INFEASIBLE, nodes=nodes_processed)
        term = Status.OPTIMAL
    if heap:
        best_bound = max(best_bound, min(heap[0][0], inc_value))
    else:
        best_bound = inc_value
    if term is Status.OPTIMAL or controls.rel_gap == 0 and not heap:
        best_bound = inc_value
    if incumbent is None:
        return SolveOutcome(term, best_bound=sign * best_bound, nodes=nodes_processed)

    return SolveOutcome(
        term,
        incumbent=incumbent,
        incumbent_value=sign * inc_value,
        best_bound=sign * best_bound,
        rel_gap_achieved=relative_gap(inc_value, best_bound),
        nodes=nodes_processed,
    )
