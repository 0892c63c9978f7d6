"""Self-contained LP simplex and branch-and-bound MILP engine."""

from .branch_and_bound import solve_milp
from .core import (BINARY, CONTINUOUS, GAP_DENOM_FLOOR, INTEGER, LinearModel,
                   SolveControls, SolveOutcome, Status, relative_gap)
from .kernel import COMPILED as KERNEL_COMPILED
from .simplex import solve_lp

__all__ = [
    "BINARY", "CONTINUOUS", "GAP_DENOM_FLOOR", "INTEGER", "KERNEL_COMPILED",
    "LinearModel", "SolveControls", "SolveOutcome", "Status",
    "relative_gap", "solve_lp", "solve_milp",
]
