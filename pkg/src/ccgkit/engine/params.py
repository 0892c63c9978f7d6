"""Algorithmic parameters for the exact and inexact C&CG loops."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ParamError

DEFAULT_MAX_ITERATIONS = 500
DEFAULT_MAX_EXPLOITATIONS = 50


@dataclass
class CcgParams:
    epsilon: float = 0.02
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    time_budget: float | None = None  # overall wall-clock cap for the run

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise ParamError("epsilon must lie in (0, 1)")
        if self.max_iterations < 1:
            raise ParamError("max_iterations must be positive")


@dataclass
class IccgParams:
    epsilon: float = 0.02
    epsilon_tilde: float = 0.015
    eps_mp_initial: float = 0.02
    alpha: float = 0.8
    conservative_bound_update: bool = False  # track the solver bound, not U^j
    exploit_frequency: int | None = None
    master_time_limit: float | None = None   # tau, seconds
    time_limit_increment: float | None = None  # beta, seconds
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    max_exploitations: int = DEFAULT_MAX_EXPLOITATIONS
    time_budget: float | None = None

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise ParamError("epsilon must lie in (0, 1)")
        limit = self.epsilon / (1.0 + self.epsilon)
        if not 0.0 <= self.epsilon_tilde < limit:
            raise ParamError(
                f"epsilon_tilde must satisfy epsilon_tilde < epsilon/(1+epsilon) "
                f"= {limit:.6g} for finite convergence (got {self.epsilon_tilde})")
        if not 0.0 <= self.eps_mp_initial < 1.0:
            raise ParamError("eps_mp_initial must lie in [0, 1)")
        if not 0.0 < self.alpha < 1.0:
            raise ParamError("alpha must lie in (0, 1)")
        if self.exploit_frequency is not None and self.exploit_frequency < 1:
            raise ParamError("exploit_frequency must be positive")
        if self.time_limit_increment is not None and self.master_time_limit is None:
            raise ParamError("time_limit_increment requires master_time_limit")
        if self.master_time_limit is not None and self.master_time_limit <= 0:
            raise ParamError("master_time_limit must be positive")
        if self.max_iterations < 1 or self.max_exploitations < 0:
            raise ParamError("iteration/exploitation caps must be positive")
