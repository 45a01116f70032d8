"""Peak structure of the interference profile: positions, widths, spacings.

All closed forms below hold on 2pi < theta < 4pi, the window in which the
profile splits into two Gaussian-like maxima.  Positions n_pm are kept as
reals; rounding happens only when comparing against a discrete argmax.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .amplitude import PathAmplitudeProfile, peak_positions, strict_argmax
from .params import ModelParams

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, slots=True)
class PeakAnalysis:
    """Closed-form peak characterisation for one (sigma_t, theta, N)."""

    n_plus: float
    n_minus: float
    t_c_peak: float            # clock time of the + maximum
    width_var_tc: float        # clock-time variance 2 / |lam tan(theta/4)|
    a_plus: float              # n_plus / (n_plus - n_minus)
    a_minus: float             # n_minus / (n_plus - n_minus)
    spacing: float             # exact consecutive-N spacing of t_c_peak
    spacing_large_n: float     # large-N form sigma_t pi / (theta sqrt(N))
    t_c_min_peak: float        # 2 pi / (lam delta_t_min); inf if no floor set


def analytic_peaks(params: ModelParams) -> PeakAnalysis:
    """Peak positions, clock times, width, weights and spacing from theta, N."""
    n_plus, n_minus = peak_positions(params)  # validates the theta window
    theta = params.theta
    N = params.n_steps
    sigma_t = params.sigma_t
    lam = params.lam
    t_c_peak = TWO_PI * sigma_t * math.sqrt(N) / theta
    width_var_tc = 2.0 / abs(lam * math.tan(theta / 4.0))
    a_plus = theta / (2.0 * TWO_PI) + 0.5
    a_minus = theta / (2.0 * TWO_PI) - 0.5
    spacing = TWO_PI * sigma_t * (math.sqrt(N + 1) - math.sqrt(N)) / theta
    spacing_large_n = sigma_t * math.pi / (theta * math.sqrt(N))
    if params.delta_t_min > 0.0:
        t_c_min_peak = TWO_PI / (lam * params.delta_t_min)
    else:
        t_c_min_peak = math.inf
    return PeakAnalysis(
        n_plus=n_plus,
        n_minus=n_minus,
        t_c_peak=t_c_peak,
        width_var_tc=width_var_tc,
        a_plus=a_plus,
        a_minus=a_minus,
        spacing=spacing,
        spacing_large_n=spacing_large_n,
        t_c_min_peak=t_c_min_peak,
    )


def numeric_peaks(profile: PathAmplitudeProfile) -> tuple[int, int]:
    """Discrete argmax of |amplitude| on the upper and lower half profile.

    Returns (n_hat_plus, n_hat_minus).  Ties resolve toward N/2, so the
    T-invariant (flat-theta) binomial profile reports its central maximum
    on both halves.  Raises FlatProfile only when every value is equal.
    """
    log_mag = profile.log_mag
    N = profile.params.n_steps
    half = N // 2
    centre = N / 2.0
    n_hat_minus = strict_argmax(log_mag, 0, half + 1, centre)
    n_hat_plus = strict_argmax(log_mag, half, N + 1, centre)
    return n_hat_plus, n_hat_minus


def peak_spacing_bound(params: ModelParams) -> tuple[float, bool]:
    """Exact peak spacing and whether it beats half the resolution floor.

    spacing = 2 pi sigma_t (sqrt(N+1) - sqrt(N)) / theta, and for
    N >= n_min with theta > 2 pi the strict bound spacing < delta_t_min / 2
    always holds.
    """
    if params.delta_t_min <= 0.0:
        raise ValueError("peak_spacing_bound requires delta_t_min > 0")
    spacing = (
        TWO_PI
        * params.sigma_t
        * (math.sqrt(params.n_steps + 1) - math.sqrt(params.n_steps))
        / params.theta
    )
    return spacing, spacing < params.delta_t_min / 2.0
