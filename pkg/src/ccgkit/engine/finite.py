"""Adapters exposing a generic finite-scenario problem to the cutting loops."""

from __future__ import annotations

import numpy as np

from ..milp import LinearModel
from ..model import (Scenario, TwoStageProblem, build_finite_master,
                     worst_case_cost)


class FiniteMasterBuilder:
    """Scenario-cut master for a two-stage problem with finite uncertainty."""

    def __init__(self, problem: TwoStageProblem):
        self.problem = problem

    def build(self, scenarios: list[Scenario], lower_cutoff: float) -> LinearModel:
        return build_finite_master(self.problem, scenarios, lower_cutoff)

    def extract(self, solution: np.ndarray) -> dict:
        n = self.problem.n
        x = np.asarray(solution[:n], dtype=float)
        return {
            "x": x,
            "delta": float(solution[n]),
            "first_stage_cost": float(self.problem.c @ x),
        }


class FiniteOracle:
    """Exact worst case by enumerating the finite uncertainty set."""

    def __init__(self, problem: TwoStageProblem):
        self.problem = problem

    def query(self, decision: dict) -> tuple[np.ndarray, float]:
        sc, value = worst_case_cost(self.problem, decision["x"])
        return sc.xi, value
