"""Parameter bundles for the temporal and spatial path constructions."""
from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class ModelParams:
    """Temporal construction parameters.

    theta is the canonical coupling; the commutator scale lam = theta/sigma_t**2
    is always derived, never stored, so the two can never disagree.
    delta_t_min is the resolution floor used by the step-count bound
    n_min = ceil(sigma_t**2 / delta_t_min**2); leave it at 0.0 when no floor
    is being asserted.
    """

    sigma_t: float
    theta: float
    n_steps: int
    delta_t_min: float = 0.0

    def __post_init__(self):
        if self.sigma_t <= 0:
            raise ValueError("sigma_t must be positive")
        if self.n_steps < 1:
            raise ValueError("n_steps must be >= 1")
        if self.delta_t_min < 0:
            raise ValueError("delta_t_min must be >= 0")

    @classmethod
    def from_lambda(cls, sigma_t, lam, n_steps, delta_t_min=0.0) -> "ModelParams":
        return cls(sigma_t, sigma_t * sigma_t * lam, n_steps, delta_t_min)

    @property
    def lam(self) -> float:
        """Commutator scale, units 1/time^2."""
        return self.theta / (self.sigma_t * self.sigma_t)

    @property
    def delta_t(self) -> float:
        """Time step sigma_t / sqrt(N)."""
        return self.sigma_t / math.sqrt(self.n_steps)

    @property
    def z(self) -> float:
        """Interference argument z = delta_t**2 * lam = theta / N."""
        return self.theta / self.n_steps

    @property
    def n_min(self) -> int:
        """Smallest step count before the step breaches delta_t_min."""
        if self.delta_t_min == 0.0:
            raise ValueError("delta_t_min not set on these params")
        return math.ceil((self.sigma_t / self.delta_t_min) ** 2)

    def clock_time(self, n) -> float:
        """Net clock time t_c = (2n - N) * delta_t."""
        return (2 * n - self.n_steps) * self.delta_t


@dataclass(frozen=True, slots=True)
class SpatialParams:
    """Spatial construction parameters (mirror of ModelParams without theta)."""

    sigma_x: float
    n_steps: int
    delta_x_min: float = 0.0

    def __post_init__(self):
        if self.sigma_x <= 0:
            raise ValueError("sigma_x must be positive")
        if self.n_steps < 1:
            raise ValueError("n_steps must be >= 1")

    @property
    def step(self) -> float:
        return self.sigma_x / math.sqrt(self.n_steps)

    @property
    def n_min_space(self) -> int:
        if self.delta_x_min <= 0.0:
            raise ValueError("delta_x_min not set on these params")
        return math.ceil((self.sigma_x / self.delta_x_min) ** 2)
