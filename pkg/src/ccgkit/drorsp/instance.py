"""Operating-room scheduling instance data (moments, bounds, costs)."""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field

import numpy as np

from ..errors import DomainError

DEFAULT_WORKING_MINUTES = 480.0


@dataclass
class DrorspInstance:
    """Surgeries with mean/MAD/duration-range data, identical ORs, costs.

    All durations are minutes. ``nu`` is the upper bound on the mean
    absolute deviation of each surgery duration.
    """

    mu: np.ndarray
    nu: np.ndarray
    dlo: np.ndarray
    dhi: np.ndarray
    num_ors: int
    c_f: float = 1.0
    c_v: float = 1.0 / 30.0
    T: float = DEFAULT_WORKING_MINUTES

    def __post_init__(self):
        self.mu = np.asarray(self.mu, dtype=float)
        self.nu = np.asarray(self.nu, dtype=float)
        self.dlo = np.asarray(self.dlo, dtype=float)
        self.dhi = np.asarray(self.dhi, dtype=float)
        n = self.mu.shape[0]
        if not (self.nu.shape[0] == self.dlo.shape[0] == self.dhi.shape[0] == n):
            raise DomainError("surgery arrays must share one length")
        if n == 0:
            raise DomainError("instance needs at least one surgery")
        if np.any(self.dlo > self.mu) or np.any(self.mu > self.dhi):
            raise DomainError("need dlo <= mu <= dhi componentwise")
        if np.any(self.nu < 0):
            raise DomainError("MAD bounds must be nonnegative")
        if self.num_ors < 1:
            raise DomainError("need at least one OR")
        if n < self.num_ors:
            raise DomainError("need at least as many surgeries as ORs "
                              "(symmetry-breaking assumption)")
        if self.c_f <= 0 or self.c_v < 0 or self.T <= 0:
            raise DomainError("costs/working minutes out of range")
        cap = np.maximum(self.mu - self.dlo, self.dhi - self.mu)
        if np.any(self.nu > cap + 1e-12):
            warnings.warn("some MAD bound exceeds max(mu-dlo, dhi-mu); "
                          "the ambiguity set may be empty", stacklevel=2)

    @property
    def n_surgeries(self) -> int:
        return self.mu.shape[0]

    @property
    def delta_lo(self) -> np.ndarray:
        return self.mu - self.dlo

    @property
    def delta_hi(self) -> np.ndarray:
        return self.dhi - self.mu


@dataclass
class DrorspFirstStage:
    """Decoded master solution: rooms, assignments and ambiguity duals."""

    x: np.ndarray          # (R,) binary open indicators
    y: np.ndarray          # (I, R) binary assignments
    eta: np.ndarray        # (I,) free duals
    phi: np.ndarray        # (I,) nonnegative duals
    delta: float


def tags_to_durations(instance: DrorspInstance, b1, b2) -> np.ndarray:
    """d_i = mu_i - b1_i*(mu_i - dlo_i) + b2_i*(dhi_i - mu_i)."""
    b1 = np.asarray(b1, dtype=float)
    b2 = np.asarray(b2, dtype=float)
    return instance.mu - b1 * instance.delta_lo + b2 * instance.delta_hi


def instance_to_json(instance: DrorspInstance) -> str:
    doc = {
        "surgeries": [{"mu": float(m), "nu": float(v), "dlo": float(lo),
                       "dhi": float(hi)}
                      for m, v, lo, hi in zip(instance.mu, instance.nu,
                                              instance.dlo, instance.dhi)],
        "num_ors": instance.num_ors,
        "c_f": instance.c_f,
        "c_v": instance.c_v,
        "T": instance.T,
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def instance_from_json(text: str) -> DrorspInstance:
    doc = json.loads(text)
    surgeries = doc["surgeries"]
    return DrorspInstance(
        mu=[s["mu"] for s in surgeries],
        nu=[s["nu"] for s in surgeries],
        dlo=[s["dlo"] for s in surgeries],
        dhi=[s["dhi"] for s in surgeries],
        num_ors=int(doc["num_ors"]),
        c_f=float(doc.get("c_f", 1.0)),
        c_v=float(doc.get("c_v", 1.0 / 30.0)),
        T=float(doc.get("T", DEFAULT_WORKING_MINUTES)),
    )
