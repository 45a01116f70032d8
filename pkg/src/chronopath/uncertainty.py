"""Uncertainty relations of the pair and physical scale estimates in SI units.

The clock-time variance bound 2/|lam tan(theta/4)| and the energy-time
value (1 - 2/pi)/lam coincide at a single theta in (2pi, 4pi), the root
of tan(theta/4) + 2/(1 - 2/pi) = 0; everything here pivots on that value.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidFraction, ThetaOutOfRange

PLANCK_TIME = 5.4e-44           # seconds
MESON_LAMBDA_SCALE = 1e57       # 1/s^2 at f = 1
HALF_NORMAL_DEFICIT = 1.0 - 2.0 / math.pi   # variance factor of |N(0, s)|


def solve_min_uncertainty_theta(tol: float = 1e-12) -> float:
    """Root of tan(theta/4) + 2/(1 - 2/pi) on (2pi, 4pi) by bisection.

    tan(theta/4) runs monotonically from -inf to 0 on this interval, so
    the bracket is guaranteed.  Converges to ~2.2288*pi.
    """
    target = -2.0 / HALF_NORMAL_DEFICIT

    def f(theta):
        return math.tan(theta / 4.0) - target

    lo = 2.0 * math.pi + 1e-9
    hi = 4.0 * math.pi - 1e-9
    flo = f(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0 or (hi - lo) < tol:
            return mid
        if (flo < 0) == (fm < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True, slots=True)
class UncertaintyReport:
    """Variance formulas evaluated at one (theta, lam)."""

    theta: float
    lam: float
    var_tc_bound: float          # 2 / |lam tan(theta/4)|
    var_h: float                 # lam / 4
    var_tc_energy_time: float    # (1 - 2/pi) / lam
    delta_tc: float              # sqrt(var_tc_energy_time)
    tc_min_peak: float | None    # 2 pi / (lam delta_t_min), if floor given
    delta_t_min: float | None


def variance_bounds(theta: float, lam: float, delta_t_min: float | None = None) -> UncertaintyReport:
    """Evaluate the clock-time and energy variance formulas at (theta, lam)."""
    if not (2.0 * math.pi < theta < 4.0 * math.pi):
        raise ThetaOutOfRange(f"theta = {theta!r} outside (2*pi, 4*pi)")
    if lam <= 0:
        raise ValueError("lam must be positive")
    var_tc_bound = 2.0 / abs(lam * math.tan(theta / 4.0))
    var_h = lam / 4.0
    var_tc_energy_time = HALF_NORMAL_DEFICIT / lam
    tc_min_peak = None
    if delta_t_min is not None:
        if delta_t_min <= 0:
            raise ValueError("delta_t_min must be positive")
        tc_min_peak = 2.0 * math.pi / (lam * delta_t_min)
    return UncertaintyReport(
        theta=theta,
        lam=lam,
        var_tc_bound=var_tc_bound,
        var_h=var_h,
        var_tc_energy_time=var_tc_energy_time,
        delta_tc=math.sqrt(var_tc_energy_time),
        tc_min_peak=tc_min_peak,
        delta_t_min=delta_t_min,
    )


def truncated_gaussian_moments(delta_tc: float, n_grid: int = 4001) -> tuple[float, float]:
    """Quadrature mean and variance of p(E) ~ exp(-2 E^2 delta_tc^2), E >= 0.

    Composite Simpson on [0, 8 sigma] with sigma = 1/(2 delta_tc).  The
    closed-form variance is sigma^2 (1 - 2/pi); the quadrature stays the
    independent route and is compared against it in tests.
    """
    if n_grid < 1000:
        raise ValueError("n_grid must be >= 1000")
    if delta_tc <= 0:
        raise ValueError("delta_tc must be positive")
    if n_grid % 2 == 0:
        n_grid += 1
    sigma = 1.0 / (2.0 * delta_tc)
    grid = np.linspace(0.0, 8.0 * sigma, n_grid)
    pdf = np.exp(-2.0 * grid**2 * delta_tc**2)
    w = np.ones(n_grid)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    h = grid[1] - grid[0]
    norm = (w * pdf).sum() * h / 3.0
    mean = (w * grid * pdf).sum() * h / 3.0 / norm
    second = (w * grid**2 * pdf).sum() * h / 3.0 / norm
    return mean, second - mean * mean


def truncated_gaussian_variance(delta_tc: float, n_grid: int = 4001) -> float:
    """Quadrature variance of the half-line energy distribution."""
    return truncated_gaussian_moments(delta_tc, n_grid)[1]


@dataclass(frozen=True, slots=True)
class ScalesInput:
    """Inputs for the SI-unit scale estimates."""

    f: float = 1.0
    delta_t_min: float = PLANCK_TIME
    lambda_override: float | None = None

    def __post_init__(self):
        if not (0.0 < self.f <= 1.0):
            raise InvalidFraction(f"f must lie in (0, 1], got {self.f!r}")
        if self.delta_t_min <= 0:
            raise ValueError("delta_t_min must be positive")
        if self.lambda_override is not None and self.lambda_override <= 0:
            raise ValueError("lambda_override must be positive")


@dataclass(frozen=True, slots=True)
class ScalesReport:
    """SI-unit outputs: coupling, onset time, and clock-time spread."""

    mode: str
    f: float
    delta_t_min: float           # s
    lam: float                   # 1/s^2
    tc_min_peak: float           # s
    delta_tc: float              # s
    delta_tc_over_dt_min: float  # dimensionless

    def as_dict(self) -> dict:
        return {
            "mode": self.mode,
            "f": self.f,
            "delta_t_min_s": self.delta_t_min,
            "lambda_per_s2": self.lam,
            "tc_min_peak_s": self.tc_min_peak,
            "delta_tc_s": self.delta_tc,
            "delta_tc_over_delta_t_min": self.delta_tc_over_dt_min,
        }


def physical_scales(inp: ScalesInput, mode: str = "meson") -> ScalesReport:
    """Scale estimates for two choices of the coupling lam.

    mode 'meson': lam = sqrt(f) * 1e57 / s^2, the decay-scale estimate.
    mode 'nature': lam = 2 pi / delta_t_min^2, chosen so the earliest
    representative clock time coincides with the resolution floor.
    lambda_override, when set, replaces either choice.
    """
    if mode == "meson":
        lam = math.sqrt(inp.f) * MESON_LAMBDA_SCALE
    elif mode == "nature":
        lam = 2.0 * math.pi / inp.delta_t_min**2
    else:
        raise ValueError(f"unknown mode {mode!r}; expected 'meson' or 'nature'")
    if inp.lambda_override is not None:
        lam = inp.lambda_override
    tc_min_peak = 2.0 * math.pi / (lam * inp.delta_t_min)
    delta_tc = math.sqrt(HALF_NORMAL_DEFICIT / lam)
    return ScalesReport(
        mode=mode,
        f=inp.f,
        delta_t_min=inp.delta_t_min,
        lam=lam,
        tc_min_peak=tc_min_peak,
        delta_tc=delta_tc,
        delta_tc_over_dt_min=delta_tc / inp.delta_t_min,
    )
