"""Seeded instance generation from synthetic surgery-type distributions."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

import numpy as np

from ..drorsp import DrorspInstance
from ..errors import SpecError

PERCENTILE_PAIRS = ((20, 80), (10, 90))
DEFAULT_SAMPLES_PER_TYPE = 500


def load_surgery_types(proportions=None) -> dict:
    """Packaged surgery-type config; proportions may be overridden."""
    text = resources.files("ccgkit.bench").joinpath("surgery_types.json").read_text()
    cfg = json.loads(text)
    if proportions is not None:
        proportions = list(map(float, proportions))
        if len(proportions) != len(cfg["types"]) or \
                abs(sum(proportions) - 1.0) > 1e-9 or min(proportions) < 0:
            raise SpecError("proportions must be a distribution over the types")
        cfg["proportions"] = proportions
    return cfg


@dataclass
class GenSpec:
    seed: int
    num_surgeries: int
    num_ors: int
    percentile_pair: tuple[int, int] = (20, 80)
    c_f: float = 1.0
    c_v: float = 1.0 / 30.0
    samples_per_type: int = DEFAULT_SAMPLES_PER_TYPE
    T: float = 480.0

    def __post_init__(self):
        self.percentile_pair = tuple(self.percentile_pair)
        if self.percentile_pair not in PERCENTILE_PAIRS:
            raise SpecError(f"percentile_pair must be one of {PERCENTILE_PAIRS}")
        if self.num_surgeries < self.num_ors or self.num_ors < 1:
            raise SpecError("need num_surgeries >= num_ors >= 1")
        if self.samples_per_type < 2:
            raise SpecError("samples_per_type too small to estimate moments")


def _type_stats(samples: np.ndarray, pair: tuple[int, int]):
    mu = float(samples.mean())
    nu = float(np.abs(samples - mu).mean())
    dlo = float(np.percentile(samples, pair[0]))
    dhi = float(np.percentile(samples, pair[1]))
    mu = min(max(mu, dlo), dhi)  # keep the support invariant under skew
    return mu, nu, dlo, dhi


def generate_instance(spec: GenSpec, proportions=None) -> DrorspInstance:
    """Deterministic under spec.seed: sample each type's durations, take
    moment/percentile statistics, and draw the type counts multinomially."""
    cfg = load_surgery_types(proportions)
    rng = np.random.default_rng(spec.seed)
    stats = []
    for t in cfg["types"]:
        raw = rng.lognormal(t["log_mean"], t["log_sigma"], spec.samples_per_type)
        stats.append(_type_stats(np.clip(raw, t["lo"], t["hi"]),
                                 spec.percentile_pair))
    counts = rng.multinomial(spec.num_surgeries, cfg["proportions"])
    mu, nu, dlo, dhi = [], [], [], []
    for t_idx, count in enumerate(counts):
        for _ in range(count):
            m, v, lo, hi = stats[t_idx]
            mu.append(m)
            nu.append(v)
            dlo.append(lo)
            dhi.append(hi)
    return DrorspInstance(mu=mu, nu=nu, dlo=dlo, dhi=dhi,
                          num_ors=spec.num_ors, c_f=spec.c_f, c_v=spec.c_v,
                          T=spec.T)
