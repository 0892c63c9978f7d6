"""Second-stage overtime recourse, closed form."""

from __future__ import annotations

import numpy as np


def recourse_overtime(y, d, working_minutes: float) -> float:
    """Total overtime sum_r (sum_i y_ir d_i - T)^+ for an assignment
    matrix y (surgeries x rooms) and durations d."""
    y = np.asarray(y, dtype=float)
    d = np.asarray(d, dtype=float)
    loads = d @ y
    return float(np.maximum(loads - working_minutes, 0.0).sum())
