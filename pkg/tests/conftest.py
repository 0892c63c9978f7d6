"""Shared factories: random two-stage toys, scheduling minis, and a
session-wide battery of inexact runs with known optima."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import pytest

from ccgkit.drorsp import (DrorspInstance, DrorspMasterBuilder, DrorspOracle,
                           brute_force_optimum)
from ccgkit.engine import (FiniteMasterBuilder, FiniteOracle, IccgParams,
                           SolveReport, solve_iccg)
from ccgkit.milp import SolveControls, SolveOutcome, solve_milp
from ccgkit.model import (FirstStage, TwoStageProblem, UncertaintySet,
                          solve_extensive_form)


def make_toy(rng, n_scen=None, integer=True) -> TwoStageProblem:
    """Random finite-uncertainty toy with relatively complete recourse
    (W > 0) and a floor row keeping the recourse cost strictly positive."""
    n = int(rng.integers(1, 3))
    m = int(rng.integers(1, 4))
    r = int(rng.integers(1, 4))
    n_scen = n_scen or int(rng.integers(2, 8))
    c = rng.uniform(0.5, 3, n)
    q = rng.uniform(0.5, 3, m)
    T = np.vstack([rng.uniform(0, 2, (r, n)), np.zeros(n)])
    W = np.vstack([rng.uniform(0.2, 2, (r, m)), np.ones(m)])
    C = np.vstack([rng.uniform(-1, 1, (r, 2)), np.zeros(2)])
    h = np.concatenate([rng.uniform(-1, 2, r), [0.3]])
    fs = FirstStage(A=np.zeros((0, n)), b=np.zeros(0), sense=[],
                    integer=list(range(n)) if integer else [],
                    bounds=[(0.0, 3.0)] * n)
    return TwoStageProblem(
        c=c, q=q, T_mat=T, W=W, C=C, h=h, first_stage=fs,
        uncertainty=UncertaintySet.finite(rng.uniform(-1, 1, (n_scen, 2))))


def make_mini(rng, n_surgeries=None, n_ors=None) -> DrorspInstance:
    """Random small scheduling instance with consistent moment data."""
    n_i = n_surgeries or int(rng.integers(3, 6))
    n_r = n_ors or int(rng.integers(1, 3))
    mu = rng.uniform(80, 300, n_i)
    dlo = mu * rng.uniform(0.5, 0.9, n_i)
    dhi = mu * rng.uniform(1.1, 1.8, n_i)
    nu = rng.uniform(0.2, 0.9, n_i) * np.maximum(mu - dlo, dhi - mu)
    return DrorspInstance(mu=mu, nu=nu, dlo=dlo, dhi=dhi, num_ors=n_r,
                          c_f=1.0, c_v=1.0 / 30.0, T=480.0)


def loose_master_solver(model, controls: SolveControls) -> SolveOutcome:
    """Exact solve with the bound pessimized to the gap contract's edge.

    Mimics a solver that stops the moment its relative gap reaches the
    target, which is what makes backtracking fire on desk-size models."""
    out = solve_milp(model, SolveControls(rel_gap=0.0,
                                          time_limit=controls.time_limit,
                                          node_limit=controls.node_limit))
    if not out.has_incumbent:
        return out
    u = out.incumbent_value
    weak = min(out.best_bound, (1.0 - controls.rel_gap) * u)
    return SolveOutcome(out.status, incumbent=out.incumbent,
                        incumbent_value=u, best_bound=weak,
                        rel_gap_achieved=(u - weak) / max(abs(u), 1e-12),
                        nodes=out.nodes)


@dataclass
class BatteryRun:
    report: SolveReport
    params: IccgParams
    optimum: float
    kind: str  # "toy" or "mini"
    tag: str = ""


@dataclass
class Battery:
    runs: list[BatteryRun] = field(default_factory=list)


def _iccg_variants():
    # high exploitation caps: the artificially loose masters backtrack far
    # more often than a real solver would
    return [
        ("plain", IccgParams(epsilon=0.02, epsilon_tilde=0.015,
                             eps_mp_initial=0.02, alpha=0.8), None),
        ("loose", IccgParams(epsilon=0.02, epsilon_tilde=0.015,
                             eps_mp_initial=0.4, alpha=0.5,
                             max_exploitations=300), loose_master_solver),
        ("conservative", IccgParams(epsilon=0.02, epsilon_tilde=0.015,
                                    eps_mp_initial=0.4, alpha=0.5,
                                    conservative_bound_update=True,
                                    max_exploitations=300),
         loose_master_solver),
        # frequency low enough to be armed, high enough not to cycle on a
        # master-value plateau (the anchor only moves on strict improvement,
        # so a too-eager override can truncate the pool forever)
        ("frequency", IccgParams(epsilon=0.02, epsilon_tilde=0.015,
                                 eps_mp_initial=0.3, alpha=0.5,
                                 exploit_frequency=6, max_exploitations=300),
         loose_master_solver),
    ]


@pytest.fixture(scope="session")
def battery() -> Battery:
    """Inexact runs over toys and minis with independently known optima."""
    runs = []
    rng = np.random.default_rng(2024)
    for _ in range(8):
        prob = make_toy(rng)
        _, vstar = solve_extensive_form(prob)
        builder, oracle = FiniteMasterBuilder(prob), FiniteOracle(prob)
        for tag, params, solver in _iccg_variants():
            report = solve_iccg(builder, oracle, params, master_solver=solver)
            runs.append(BatteryRun(report, params, vstar, "toy", tag))
    for _ in range(6):
        inst = make_mini(rng)
        vstar, _, _ = brute_force_optimum(inst)
        builder, oracle = DrorspMasterBuilder(inst), DrorspOracle(inst)
        for tag, params, solver in _iccg_variants():
            report = solve_iccg(builder, oracle, params, master_solver=solver)
            runs.append(BatteryRun(report, params, vstar, "mini", tag))
    return Battery(runs)
