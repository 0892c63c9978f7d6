"""Model containers and solve-outcome types for the LP/MILP engine."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ..errors import DimensionError

CONTINUOUS = "continuous"
BINARY = "binary"
INTEGER = "integer"

GAP_DENOM_FLOOR = 1e-12


class Status(Enum):
    OPTIMAL = "Optimal"
    GAP_REACHED = "GapReached"
    TIME_LIMIT = "TimeLimit"
    NODE_LIMIT = "NodeLimit"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


@dataclass
class Column:
    lower: float = 0.0
    upper: float = np.inf
    integrality: str = CONTINUOUS
    name: str = ""


@dataclass
class Row:
    coeffs: dict[int, float]
    sense: str  # "<=", ">=" or "="
    rhs: float
    name: str = ""


@dataclass
class LinearModel:
    """Mixed-integer linear model: min/max c'x over rows and column bounds."""

    sense: str = "min"  # "min" or "max"
    objective: dict[int, float] = field(default_factory=dict)
    columns: list[Column] = field(default_factory=list)
    rows: list[Row] = field(default_factory=list)

    def add_column(self, lower=0.0, upper=np.inf, integrality=CONTINUOUS,
                   obj=0.0, name="") -> int:
        j = len(self.columns)
        self.columns.append(Column(lower, upper, integrality, name))
        if obj:
            self.objective[j] = self.objective.get(j, 0.0) + obj
        return j

    def add_row(self, coeffs: dict[int, float], sense: str, rhs: float,
                name: str = "") -> int:
        self.rows.append(Row(dict(coeffs), sense, rhs, name))
        return len(self.rows) - 1

    @property
    def num_columns(self) -> int:
        return len(self.columns)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def integer_columns(self) -> list[int]:
        return [j for j, c in enumerate(self.columns)
                if c.integrality in (BINARY, INTEGER)]

    def validate(self) -> None:
        n = self.num_columns
        for j, c in enumerate(self.columns):
            if c.lower > c.upper:
                raise DimensionError(f"column {j}: lower > upper")
            if c.integrality in (BINARY, INTEGER):
                if not (np.isfinite(c.lower) and np.isfinite(c.upper)):
                    raise DimensionError(
                        f"integer column {j} must have finite bounds")
        for i, r in enumerate(self.rows):
            if r.sense not in ("<=", ">=", "="):
                raise DimensionError(f"row {i}: bad sense {r.sense!r}")
            for j in r.coeffs:
                if not 0 <= j < n:
                    raise DimensionError(f"row {i}: column index {j} out of range")
        for j in self.objective:
            if not 0 <= j < n:
                raise DimensionError(f"objective column index {j} out of range")

    def objective_vector(self) -> np.ndarray:
        c = np.zeros(self.num_columns)
        for j, v in self.objective.items():
            c[j] = v
        return c

    def dump_lp(self) -> str:
        """Debug-oriented LP-style text dump. Not a compatibility promise."""
        def col_name(j):
            return self.columns[j].name or f"x{j}"

        def expr(coeffs):
            parts = []
            for j in sorted(coeffs):
                v = coeffs[j]
                parts.append(f"{'+' if v >= 0 else '-'} {abs(v):.12g} {col_name(j)}")
            return " ".join(parts) if parts else "0"

        lines = [f"{'Minimize' if self.sense == 'min' else 'Maximize'}",
                 f"  obj: {expr(self.objective)}", "Subject To"]
        for i, r in enumerate(self.rows):
            lines.append(f"  {r.name or f'c{i}'}: {expr(r.coeffs)} {r.sense} {r.rhs:.12g}")
        lines.append("Bounds")
        for j, c in enumerate(self.columns):
            lines.append(f"  {c.lower:.12g} <= {col_name(j)} <= {c.upper:.12g}")
        ints = self.integer_columns()
        if ints:
            lines.append("Integers")
            lines.append("  " + " ".join(col_name(j) for j in ints))
        lines.append("End")
        return "\n".join(lines) + "\n"


@dataclass
class SolveControls:
    rel_gap: float = 0.0
    time_limit: float | None = None
    node_limit: int | None = None

    def __post_init__(self):
        if not 0.0 <= self.rel_gap < 1.0:
            raise ValueError("rel_gap must lie in [0, 1)")


def relative_gap(incumbent_value: float, best_bound: float) -> float:
    """(U - L) / max(|U|, floor); the floor guards division by zero."""
    return abs(incumbent_value - best_bound) / max(abs(incumbent_value),
                                                   GAP_DENOM_FLOOR)


@dataclass
class SolveOutcome:
    status: Status
    incumbent: np.ndarray | None = None
    incumbent_value: float = np.nan
    best_bound: float = np.nan
    rel_gap_achieved: float = np.nan
    nodes: int = 0
    # LP extras (populated by solve_lp)
    duals: np.ndarray | None = None
    reduced_costs: np.ndarray | None = None

    @property
    def has_incumbent(self) -> bool:
        return self.incumbent is not None
