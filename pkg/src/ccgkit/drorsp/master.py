"""Scenario-cut master for the OR-scheduling problem.

Decision variables: binary open indicators x_r, binary assignments y_ir,
ambiguity duals (eta free, phi >= 0), the epigraph value delta, and one
overtime column w^k_r per scenario/room pair. The objective is
c_f*sum(x) + c_v*sum(mu*eta + nu*phi) + c_v*delta.

Beyond the scenario cuts, the model carries:
  * the cutoff row  objective >= L_bar  (how inexact runs inherit bounds),
  * the valid inequality  sum(mu*eta + nu*phi) + delta >= 0  (the
    worst-case expected overtime is nonnegative, so its dual upper bound
    is too; without it the empty-pool master is unbounded below),
  * optional symmetry-breaking rows over identical rooms.
"""

from __future__ import annotations

import numpy as np

from ..milp import BINARY, LinearModel
from ..model import Scenario
from .instance import DrorspFirstStage, DrorspInstance


def _layout(instance: DrorspInstance):
    n_i, n_r = instance.n_surgeries, instance.num_ors
    x0 = 0
    y0 = n_r
    eta0 = y0 + n_i * n_r
    phi0 = eta0 + n_i
    delta = phi0 + n_i
    return x0, y0, eta0, phi0, delta


def build_drorsp_master(instance: DrorspInstance, scenarios: list[Scenario],
                        lower_cutoff: float = 0.0,
                        symmetry_breaking: bool = True) -> LinearModel:
    n_i, n_r = instance.n_surgeries, instance.num_ors
    cv = instance.c_v
    model = LinearModel()
    x0, y0, eta0, phi0, delta = _layout(instance)

    for r in range(n_r):
        model.add_column(0.0, 1.0, BINARY, obj=instance.c_f, name=f"x{r}")
    for i in range(n_i):
        for r in range(n_r):
            model.add_column(0.0, 1.0, BINARY, name=f"y{i}_{r}")
    for i in range(n_i):
        model.add_column(-np.inf, np.inf, obj=cv * instance.mu[i], name=f"eta{i}")
    for i in range(n_i):
        model.add_column(0.0, np.inf, obj=cv * instance.nu[i], name=f"phi{i}")
    model.add_column(-np.inf, np.inf, obj=cv, name="delta")

    def ycol(i, r):
        return y0 + i * n_r + r

    for i in range(n_i):
        model.add_row({ycol(i, r): 1.0 for r in range(n_r)}, "=", 1.0,
                      name=f"assign{i}")
        for r in range(n_r):
            model.add_row({x0 + r: 1.0, ycol(i, r): -1.0}, ">=", 0.0,
                          name=f"open{i}_{r}")

    valid = {delta: 1.0}
    for i in range(n_i):
        if instance.mu[i]:
            valid[eta0 + i] = instance.mu[i]
        if instance.nu[i]:
            valid[phi0 + i] = instance.nu[i]
    model.add_row(valid, ">=", 0.0, name="nonneg_overtime")

    cutoff = {delta: cv}
    for r in range(n_r):
        cutoff[x0 + r] = instance.c_f
    for i in range(n_i):
        if instance.mu[i]:
            cutoff[eta0 + i] = cv * instance.mu[i]
        if instance.nu[i]:
            cutoff[phi0 + i] = cv * instance.nu[i]
    model.add_row(cutoff, ">=", float(lower_cutoff), name="cutoff")

    for sc in scenarios:
        d = np.asarray(sc.xi, dtype=float)
        dev = np.abs(d - instance.mu)
        wcols = [model.add_column(0.0, np.inf, name=f"w{sc.id}_{r}")
                 for r in range(n_r)]
        for r in range(n_r):
            coeffs = {wcols[r]: 1.0}
            for i in range(n_i):
                if d[i]:
                    coeffs[ycol(i, r)] = -d[i]
            model.add_row(coeffs, ">=", -instance.T, name=f"ot{sc.id}_{r}")
        cut = {delta: 1.0}
        for r in range(n_r):
            cut[wcols[r]] = -1.0
        for i in range(n_i):
            if d[i]:
                cut[eta0 + i] = d[i]
            if dev[i]:
                cut[phi0 + i] = dev[i]
        model.add_row(cut, ">=", 0.0, name=f"cut{sc.id}")

    if symmetry_breaking:
        for r in range(n_r - 1):
            model.add_row({x0 + r: 1.0, x0 + r + 1: -1.0}, ">=", 0.0,
                          name=f"sym_x{r}")
        # surgery i may only use the first i+1 rooms (i < R)
        for i in range(n_r - 1):
            model.add_row({ycol(i, r): 1.0 for r in range(i + 1)}, "=", 1.0,
                          name=f"sym_y{i}")
        # staircase: room j is used for surgery i only if some earlier
        # surgery occupies room j-1 (1-based indices in the comments)
        for j in range(1, n_r):
            for i in range(j, n_r):
                coeffs = {}
                for r in range(j, i + 1):
                    coeffs[ycol(i, r)] = coeffs.get(ycol(i, r), 0.0) + 1.0
                for u in range(j - 1, i):
                    coeffs[ycol(u, j - 1)] = coeffs.get(ycol(u, j - 1), 0.0) - 1.0
                model.add_row(coeffs, "<=", 0.0, name=f"sym_s{j}_{i}")
    return model


def extract_first_stage(instance: DrorspInstance, solution) -> DrorspFirstStage:
    n_i, n_r = instance.n_surgeries, instance.num_ors
    x0, y0, eta0, phi0, delta = _layout(instance)
    sol = np.asarray(solution, dtype=float)
    return DrorspFirstStage(
        x=np.round(sol[x0:x0 + n_r]),
        y=np.round(sol[y0:y0 + n_i * n_r]).reshape(n_i, n_r),
        eta=sol[eta0:eta0 + n_i].copy(),
        phi=sol[phi0:phi0 + n_i].copy(),
        delta=float(sol[delta]),
    )


def first_stage_cost(instance: DrorspInstance, fs: DrorspFirstStage) -> float:
    """Objective minus the c_v*delta epigraph term."""
    return float(instance.c_f * fs.x.sum()
                 + instance.c_v * (instance.mu @ fs.eta + instance.nu @ fs.phi))


class DrorspMasterBuilder:
    """Engine-facing adapter around the master model."""

    def __init__(self, instance: DrorspInstance, symmetry_breaking: bool = True):
        self.instance = instance
        self.symmetry_breaking = symmetry_breaking

    def build(self, scenarios: list[Scenario], lower_cutoff: float) -> LinearModel:
        return build_drorsp_master(self.instance, scenarios, lower_cutoff,
                                   self.symmetry_breaking)

    def extract(self, solution) -> dict:
        fs = extract_first_stage(self.instance, solution)
        return {
            "x": fs.x,
            "delta": fs.delta,
            "first_stage_cost": first_stage_cost(self.instance, fs),
            "first_stage": fs,
        }
