"""Worst-case duration subproblem.

For a fixed assignment and ambiguity duals, finds the duration vector in
the box support maximizing overtime minus the dual penalty. The overtime
function is piecewise linear in each duration with its only breakpoint at
the mean, so an optimum exists with every d_i in {dlo_i, mu_i, dhi_i};
per-surgery binary tags (b1, b2) encode the choice, and products with the
LP-dual room multipliers pi_r are linearized by McCormick inequalities.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..errors import CapExceeded, DomainError
from ..milp import BINARY, LinearModel, SolveControls, Status, solve_milp
from .instance import DrorspFirstStage, DrorspInstance, tags_to_durations
from .recourse import recourse_overtime

ENUMERATE_CAP = 3 ** 9
_TAG_ORDER = ((0, 0), (0, 1), (1, 0))  # mu, dhi, dlo — lexicographic (b1, b2)
VALUE_TOL = 1e-7


@dataclass
class DrorspScenario:
    d: np.ndarray
    b1: np.ndarray
    b2: np.ndarray


def build_subproblem_milp(instance: DrorspInstance, y, eta, phi,
                          fixed_tags=None) -> LinearModel:
    """Maximization MILP of the worst-case duration subproblem.

    ``fixed_tags`` optionally pins (b1_i, b2_i) for a prefix of surgeries
    (used by the deterministic tie-break).
    """
    y = np.asarray(y, dtype=float)
    eta = np.asarray(eta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    n_i, n_r = instance.n_surgeries, instance.num_ors
    if y.shape != (n_i, n_r) or eta.shape != (n_i,) or phi.shape != (n_i,):
        raise DomainError("first-stage arrays inconsistent with instance")
    dlo_gap = instance.delta_lo
    dhi_gap = instance.delta_hi

    model = LinearModel(sense="max")
    for r in range(n_r):
        model.add_column(0.0, 1.0, obj=float(-instance.T + instance.mu @ y[:, r]),
                         name=f"pi{r}")
    b1 = [model.add_column(0.0, 1.0, BINARY,
                           obj=float(dlo_gap[i] * (eta[i] - phi[i])),
                           name=f"b1_{i}") for i in range(n_i)]
    b2 = [model.add_column(0.0, 1.0, BINARY,
                           obj=float(-dhi_gap[i] * (eta[i] + phi[i])),
                           name=f"b2_{i}") for i in range(n_i)]
    if fixed_tags is not None:
        for i, (t1, t2) in enumerate(fixed_tags):
            model.columns[b1[i]].lower = model.columns[b1[i]].upper = float(t1)
            model.columns[b2[i]].lower = model.columns[b2[i]].upper = float(t2)

    def mccormick(bcol, i, r, obj):
        z = model.add_column(0.0, 1.0, obj=obj)
        model.add_row({z: 1.0, r: -1.0, bcol: -1.0}, ">=", -1.0)
        model.add_row({z: 1.0, r: -1.0}, "<=", 0.0)
        model.add_row({z: 1.0, bcol: -1.0}, "<=", 0.0)
        return z

    for i in range(n_i):
        for r in range(n_r):
            mccormick(b1[i], i, r, obj=float(-dlo_gap[i] * y[i, r]))
    for i in range(n_i):
        for r in range(n_r):
            mccormick(b2[i], i, r, obj=float(dhi_gap[i] * y[i, r]))
    for i in range(n_i):
        model.add_row({b1[i]: 1.0, b2[i]: 1.0}, "<=", 1.0)
    # constant part of the objective, -sum_i mu_i eta_i
    model.add_column(1.0, 1.0, obj=float(-(instance.mu @ eta)), name="one")
    return model


def _penalized_value(instance, y, eta, phi, d):
    dev = np.abs(d - instance.mu)
    return (recourse_overtime(y, d, instance.T)
            - float(d @ eta) - float(dev @ phi))


def _enumerate(instance, y, eta, phi):
    n_i = instance.n_surgeries
    if 3 ** n_i > ENUMERATE_CAP:
        raise CapExceeded(f"3^{n_i} candidate grids exceed the "
                          f"enumeration cap {ENUMERATE_CAP}")
    best_tags = None
    best_val = -np.inf
    for tags in itertools.product(_TAG_ORDER, repeat=n_i):
        d = tags_to_durations(instance, [t[0] for t in tags],
                              [t[1] for t in tags])
        val = _penalized_value(instance, y, eta, phi, d)
        if val > best_val:
            best_val = val
            best_tags = tags
    b1 = np.array([t[0] for t in best_tags])
    b2 = np.array([t[1] for t in best_tags])
    return DrorspScenario(tags_to_durations(instance, b1, b2), b1, b2), best_val


def _milp(instance, y, eta, phi, tie_break):
    def solve(fixed):
        out = solve_milp(build_subproblem_milp(instance, y, eta, phi, fixed),
                         SolveControls(rel_gap=0.0))
        if out.status not in (Status.OPTIMAL, Status.GAP_REACHED):
            raise DomainError(f"subproblem MILP ended {out.status.value}")
        return out

    out = solve(None)
    target = float(out.incumbent_value)
    n_i, n_r = instance.n_surgeries, instance.num_ors
    tol = VALUE_TOL * max(1.0, abs(target))
    if tie_break:
        # lexicographically smallest optimal tag vector by greedy fixing
        fixed: list[tuple[int, int]] = []
        for i in range(n_i):
            for tag in _TAG_ORDER:
                trial = solve(fixed + [tag])
                if trial.incumbent_value >= target - tol:
                    fixed.append(tag)
                    break
            else:
                raise DomainError("tie-break lost the subproblem optimum")
        b1 = np.array([t[0] for t in fixed])
        b2 = np.array([t[1] for t in fixed])
    else:
        sol = out.incumbent
        b1 = np.round(sol[n_r:n_r + n_i]).astype(int)
        b2 = np.round(sol[n_r + n_i:n_r + 2 * n_i]).astype(int)
    return DrorspScenario(tags_to_durations(instance, b1, b2), b1, b2), target


def worst_case_scenario(instance: DrorspInstance, first_stage: DrorspFirstStage,
                        mode: str = "milp",
                        tie_break: bool = True) -> tuple[DrorspScenario, float]:
    """Maximize Q(y, d) - sum_i (d_i eta_i + |d_i - mu_i| phi_i) over the
    box support; ties go to the lexicographically smallest tag vector."""
    args = (instance, first_stage.y, first_stage.eta, first_stage.phi)
    if mode == "enumerate":
        return _enumerate(*args)
    if mode == "milp":
        return _milp(*args, tie_break)
    raise DomainError(f"unknown mode {mode!r}")


class DrorspOracle:
    """Engine-facing adapter; values are scaled by c_v so the engine's
    upper-bound update is exactly first_stage_cost + oracle value."""

    def __init__(self, instance: DrorspInstance, mode: str = "milp",
                 tie_break: bool = True):
        self.instance = instance
        self.mode = mode
        self.tie_break = tie_break

    def query(self, decision: dict) -> tuple[np.ndarray, float]:
        sc, value = worst_case_scenario(self.instance, decision["first_stage"],
                                        self.mode, self.tie_break)
        return sc.d, self.instance.c_v * value
