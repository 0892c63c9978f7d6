"""Performance-profile curves over experiment result rows."""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

from ..errors import EmptyInput, SpecError
from .runner import ResultRow


@dataclass
class ProfileCurve:
    metric: str                       # "time" or "gap"
    points: list[tuple[float, float]]  # (threshold, fraction solved)
    metadata: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        base = self.metadata.get("label")
        if base:
            return str(base)
        parts = [str(self.metadata[k]) for k in ("method", "eps")
                 if k in self.metadata]
        return " ".join(parts) or self.metric


def performance_profile(rows: list[ResultRow], metric: str,
                        thresholds, metadata: dict | None = None) -> ProfileCurve:
    """Fraction of runs meeting the metric at each threshold.

    time: converged within t seconds. gap: final gap at most g, counted
    only over runs that stopped at the wall cap (the interesting tail)."""
    thresholds = sorted(float(t) for t in thresholds)
    if not rows or not thresholds:
        raise EmptyInput("need result rows and thresholds")
    if metric == "time":
        vals = [r.time_s if r.status == "Converged" else np.inf for r in rows]
    elif metric == "gap":
        vals = [r.final_gap for r in rows if r.status == "TimeBudget"]
        if not vals:
            raise EmptyInput("no runs hit the wall cap; gap profile undefined")
    else:
        raise SpecError(f"unknown metric {metric!r}")
    n = len(vals)
    points = [(t, sum(v <= t for v in vals) / n) for t in thresholds]
    return ProfileCurve(metric, points, dict(metadata or {}))


def curves_to_csv(curves: list[ProfileCurve]) -> str:
    if not curves:
        raise EmptyInput("no curves")
    out = io.StringIO()
    out.write("label,metric,threshold,fraction\n")
    for c in curves:
        for t, f in c.points:
            out.write(f"{c.label},{c.metric},{t:.8g},{f:.8g}\n")
    return out.getvalue()
