"""Brute-force references for the OR-scheduling problem.

The worst-case expected overtime under the mean-MAD ambiguity set is a
finite moment LP once the support is restricted to the per-surgery grid
{dlo_i, mu_i, dhi_i}: the dual cut right-hand side is piecewise linear in
each duration with its breakpoint at the mean, so the grid-supported dual
has the same optimum as the full box, and LP duality transfers that to
the primal. These routines exist to check the decomposition, not to be
fast.
"""

from __future__ import annotations

import itertools

import numpy as np

from ..errors import CapExceeded, InfeasibleProblem
from ..milp import LinearModel, Status, solve_lp
from .instance import DrorspFirstStage, DrorspInstance
from .recourse import recourse_overtime
from .subproblem import ENUMERATE_CAP, worst_case_scenario

ASSIGNMENT_CAP = 4096


def worst_case_expectation(instance: DrorspInstance, y) -> float:
    """sup over mean-MAD distributions of expected overtime, by moment LP."""
    n_i = instance.n_surgeries
    if 3 ** n_i > ENUMERATE_CAP:
        raise CapExceeded(f"3^{n_i} support points exceed {ENUMERATE_CAP}")
    y = np.asarray(y, dtype=float)
    grid = [(instance.dlo[i], instance.mu[i], instance.dhi[i])
            for i in range(n_i)]
    points = [np.array(d) for d in itertools.product(*grid)]
    model = LinearModel(sense="max")
    for d in points:
        model.add_column(0.0, np.inf,
                         obj=recourse_overtime(y, d, instance.T))
    model.add_row({k: 1.0 for k in range(len(points))}, "=", 1.0)
    for i in range(n_i):
        model.add_row({k: float(points[k][i]) for k in range(len(points))},
                      "=", float(instance.mu[i]))
        model.add_row({k: abs(float(points[k][i]) - instance.mu[i])
                       for k in range(len(points))}, "<=", float(instance.nu[i]))
    out = solve_lp(model)
    if out.status is not Status.OPTIMAL:
        raise InfeasibleProblem(
            f"moment LP ended {out.status.value}; ambiguity set likely empty")
    return float(out.incumbent_value)


def true_objective(instance: DrorspInstance, x, y) -> float:
    """c_f * open rooms + c_v * worst-case expected overtime."""
    return float(instance.c_f * np.asarray(x, dtype=float).sum()
                 + instance.c_v * worst_case_expectation(instance, y))


def dual_objective(instance: DrorspInstance, fs: DrorspFirstStage) -> float:
    """Upper bound on the true objective from a (possibly suboptimal) dual
    pair: c_f*sum(x) + c_v*(mu'eta + nu'phi + sup_d penalized overtime)."""
    _, sup = worst_case_scenario(instance, fs, mode="enumerate")
    return float(instance.c_f * fs.x.sum()
                 + instance.c_v * (instance.mu @ fs.eta + instance.nu @ fs.phi
                                   + sup))


def brute_force_optimum(instance: DrorspInstance,
                        cap: int = ASSIGNMENT_CAP):
    """Best (value, x, y) over all room assignments, evaluating each with
    the moment LP. Opening a room without surgeries never helps (c_f > 0),
    so only used rooms are opened."""
    n_i, n_r = instance.n_surgeries, instance.num_ors
    if n_r ** n_i > cap:
        raise CapExceeded(f"{n_r}^{n_i} assignments exceed cap {cap}")
    best = (np.inf, None, None)
    for rooms in itertools.product(range(n_r), repeat=n_i):
        y = np.zeros((n_i, n_r))
        for i, r in enumerate(rooms):
            y[i, r] = 1.0
        x = (y.sum(axis=0) > 0).astype(float)
        val = true_objective(instance, x, y)
        if val < best[0]:
            best = (val, x, y)
    return best
