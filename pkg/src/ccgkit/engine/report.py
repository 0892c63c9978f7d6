"""Run reports: per-iteration records, exploit events, CSV serialization."""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

CSV_HEADER = ("run_id,iter,decision,L,U,Lbar,Ubar,gap_actual,gap_inexact,"
              "scenario_id,master_status,master_ms,sub_ms")


@dataclass
class IterationRecord:
    order: int          # wall-clock solve count, 1-based
    index: int          # algorithmic iteration index j (rewinds on Exploit)
    ell: int            # anchor index of the last certified lower bound
    L_ell: float        # the certified lower bound itself
    decision: str       # Continue | Explore | Exploit | Terminate
    L: float            # lower bound recorded at this master solve
    U: float            # master incumbent objective
    L_bar: float        # cutoff handed to this master solve
    U_bar: float        # best upper bound after the oracle update
    gap_actual: float   # (U_bar - L^ell) / U_bar
    gap_inexact: float  # (U_bar - U)    / U_bar
    eps_mp: float       # master tolerance used at this solve
    scenario_id: int    # scenario returned by the oracle
    scenario_added: int  # id appended to the pool (-1 if none)
    master_status: str
    master_ms: float
    sub_ms: float


@dataclass
class ExploitEvent:
    order: int               # wall-clock order of the triggering iteration
    ell: int                 # anchor index of the last strict improvement
    j: int                   # index backtracked from
    gap_actual: float        # actual gap at the decision point
    eps_mp_seq: list[float]  # master tolerances used at indices ell..j
    freq_triggered: bool     # True when forced by the frequency override
    certified: bool          # every master in ell..j met its gap target


@dataclass
class SolveReport:
    method: str                        # "ccg" or "iccg"
    termination: str                   # Converged | IterationCap | ExploitationCap | TimeBudget
    final_x: np.ndarray | None
    final_value: float                 # best upper bound
    valid_lower_bound: float
    actual_gap: float
    iterations: list[IterationRecord] = field(default_factory=list)
    exploit_events: list[ExploitEvent] = field(default_factory=list)
    scenarios: list[tuple[int, list[float]]] = field(default_factory=list)
    wall_time_s: float = 0.0
    final_decision: dict | None = None  # full decoded master solution

    @property
    def converged(self) -> bool:
        return self.termination == "Converged"

    @property
    def num_explores(self) -> int:
        return sum(1 for r in self.iterations if r.decision == "Explore")

    @property
    def num_exploits(self) -> int:
        return len(self.exploit_events)

    def iterations_csv(self, run_id: str) -> str:
        out = io.StringIO()
        out.write(CSV_HEADER + "\n")
        for r in self.iterations:
            out.write(f"{run_id},{r.order},{r.decision},{r.L:.12g},{r.U:.12g},"
                      f"{r.L_bar:.12g},{_fmt(r.U_bar)},{_fmt(r.gap_actual)},"
                      f"{_fmt(r.gap_inexact)},{r.scenario_id},{r.master_status},"
                      f"{r.master_ms:.3f},{r.sub_ms:.3f}\n")
        return out.getvalue()

    def summary(self) -> str:
        return (f"method={self.method} termination={self.termination} "
                f"value={self.final_value:.6g} bound={self.valid_lower_bound:.6g} "
                f"gap={self.actual_gap:.4%} masters={len(self.iterations)} "
                f"explores={self.num_explores} exploits={self.num_exploits}")


def _fmt(v: float) -> str:
    return "inf" if np.isinf(v) else f"{v:.12g}"
