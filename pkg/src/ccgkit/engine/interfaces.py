"""Seams between the cutting loops and any concrete application.

A master builder turns the current scenario pool into a MILP and decodes
its solutions; a worst-case oracle maps a first-stage decision to the
scenario attaining (or approximating from below) the worst recourse cost.
"""

from __future__ import annotations

from typing import Any, Callable, Protocol

import numpy as np

from ..milp import LinearModel, SolveControls, SolveOutcome
from ..model import Scenario, canonical_key


class MasterBuilder(Protocol):
    def build(self, scenarios: list[Scenario], lower_cutoff: float) -> LinearModel:
        """Master with one cut block per scenario and the valid row
        objective >= lower_cutoff."""
        ...

    def extract(self, solution: np.ndarray) -> dict[str, Any]:
        """Decode a master solution.

        Must provide at least ``x`` (first-stage vector), ``delta`` (the
        epigraph value), and ``first_stage_cost`` (the objective minus
        delta, i.e. the part that recombines with an oracle value into an
        upper bound)."""
        ...


class WorstCaseOracle(Protocol):
    def query(self, decision: dict[str, Any]) -> tuple[np.ndarray, float]:
        """Return (xi_star, value) with value = worst-case recourse cost of
        ``decision`` on the same scale as ``first_stage_cost``."""
        ...


# Signature of the pluggable master solver (defaults to the built-in MILP
# engine; tests substitute scripted solvers here).
MasterSolver = Callable[[LinearModel, SolveControls], SolveOutcome]


class ScenarioRegistry:
    """Assigns stable ids to scenario vectors at first discovery."""

    def __init__(self):
        self._by_key: dict[tuple, Scenario] = {}

    def get(self, xi) -> Scenario:
        key = canonical_key(xi)
        sc = self._by_key.get(key)
        if sc is None:
            sc = Scenario(np.asarray(xi, dtype=float).copy(), len(self._by_key))
            self._by_key[key] = sc
        return sc

    def __len__(self) -> int:
        return len(self._by_key)

    def all(self) -> list[Scenario]:
        return sorted(self._by_key.values(), key=lambda s: s.id)
