"""Exact and inexact column-and-constraint generation loops."""

from .ccg import solve_ccg, solve_master
from .finite import FiniteMasterBuilder, FiniteOracle
from .iccg import backtrack_decision, prop2_gap_bound, solve_iccg
from .interfaces import (MasterBuilder, MasterSolver, ScenarioRegistry,
                         WorstCaseOracle)
from .params import CcgParams, IccgParams
from .report import CSV_HEADER, ExploitEvent, IterationRecord, SolveReport

__all__ = [
    "CSV_HEADER", "CcgParams", "ExploitEvent", "FiniteMasterBuilder",
    "FiniteOracle", "IccgParams", "IterationRecord", "MasterBuilder",
    "MasterSolver", "ScenarioRegistry", "SolveReport", "WorstCaseOracle",
    "backtrack_decision", "prop2_gap_bound", "solve_ccg", "solve_iccg",
    "solve_master",
]
