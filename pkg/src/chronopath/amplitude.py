"""Interference amplitudes of the two-Hamiltonian path sum.

The central object is the interference function

    I(N, n; z) = exp(-i n (N-n) z / 2) * prod_{q=1..n} sin((N+1-q) z/2) / sin(q z/2)

with z = theta/N, which weights the term whose net step index is n in the
reordered path sum.  Magnitudes are accumulated as exact sums of log|sin|
terms so that profiles at N ~ 1e4 (or larger) stay finite; phases are the
quadratic prefactor plus pi per negative sine factor.

The z -> 0 limit of each product factor is (N+1-q)/q, so I collapses to the
binomial coefficient C(N, n); that branch is evaluated through log-gamma.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import FlatProfile, SingularDenominator, ThetaOutOfRange
from .logcomplex import LogComplex
from .params import ModelParams

# Guard band (radians) around the pole lattice q*z/2 = k*pi, k >= 1.
POLE_GUARD = 1e-12

_LOG2 = math.log(2.0)


def _pole_scan(theta: float, n_steps: int, q_max: int):
    """Return (q, k) of the first guarded pole among q = 1..q_max, else None.

    Arguments are taken in magnitude so negative couplings hit the same
    lattice |q z/2| = k pi, k >= 1.
    """
    z = theta / n_steps
    j = np.arange(1, q_max + 1)
    arg = np.abs(j * (z / 2.0))
    k = np.round(arg / math.pi)
    bad = (k >= 1) & (np.abs(arg - k * math.pi) < POLE_GUARD)
    if bad.any():
        i = int(np.argmax(bad))
        return int(j[i]), int(k[i])
    return None


def theta_on_pole(theta: float, n_steps: int) -> bool:
    """True when any factor of the full n = 0..N profile sits on a pole."""
    if theta == 0.0:
        return False
    return _pole_scan(theta, n_steps, n_steps) is not None


def perturb_theta(theta: float, n_steps: int, step: float = 1e-9) -> float:
    """Nudge theta off the pole lattice by repeated +step increments."""
    t = theta
    while theta_on_pole(t, n_steps):
        t += step
    return t


def interference(params: ModelParams, n: int) -> LogComplex:
    """Exact scalar evaluation of I(N, n; z) with compensated summation.

    The log-magnitude is math.fsum of the individual log|sin| terms in
    ascending q, which keeps the n <-> N-n magnitude symmetry exact.
    """
    N = params.n_steps
    if not 0 <= n <= N:
        raise ValueError(f"n must be in [0, {N}], got {n}")
    if n == 0:
        return LogComplex.one()
    theta = params.theta
    if theta == 0.0:
        return LogComplex(_log_binomial(N, n), 0.0)
    pole = _pole_scan(theta, N, n)
    if pole is not None:
        raise SingularDenominator(theta, N, *pole)
    z = theta / N
    terms = []
    negatives = 0
    for q in range(1, n + 1):
        num = math.sin((N + 1 - q) * (z / 2.0))
        den = math.sin(q * (z / 2.0))
        if num == 0.0:
            return LogComplex.zero()
        terms.append(math.log(abs(num)))
        terms.append(-math.log(abs(den)))
        if num < 0.0:
            negatives += 1
        if den < 0.0:
            negatives += 1
    log_mag = math.fsum(terms)
    phase = -n * (N - n) * (z / 2.0)
    if negatives % 2:
        phase += math.pi
    return LogComplex(log_mag, phase)


def _log_binomial(N: int, n) -> float:
    return gammaln(N + 1.0) - gammaln(np.asarray(n) + 1.0) - gammaln(N - np.asarray(n) + 1.0)


def binomial_log_profile(n_steps: int) -> np.ndarray:
    """log B_n for n = 0..N, where B_n = C(N, n) / 2**N."""
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    n = np.arange(n_steps + 1)
    return _log_binomial(n_steps, n) - n_steps * _LOG2


def normalize_magnitudes(log_mags: np.ndarray, normalization: str = "max") -> np.ndarray:
    """Linear-domain magnitudes under 'max' (peak = 1) or 'l2' (sum of squares = 1)."""
    log_mags = np.asarray(log_mags, dtype=float)
    if normalization == "max":
        return np.exp(log_mags - log_mags.max())
    if normalization == "l2":
        twice = 2.0 * log_mags
        ref = twice.max()
        log_norm = 0.5 * (ref + math.log(np.exp(twice - ref).sum()))
        return np.exp(log_mags - log_norm)
    raise ValueError(f"unknown normalization {normalization!r}")


def gaussian_envelope(x, sigma):
    """exp(-x**2 / (2 sigma**2)); accepts scalars or arrays."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    x = np.asarray(x, dtype=float)
    out = np.exp(-(x * x) / (2.0 * sigma * sigma))
    return float(out) if out.ndim == 0 else out


def cosine_limit_residual(amplitude: float, n_steps: int) -> float:
    """|cos(A/sqrt(N))**N - exp(-A**2/2)|, the finite-N closure defect."""
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    c = math.cos(amplitude / math.sqrt(n_steps))
    return abs(c**n_steps - math.exp(-amplitude * amplitude / 2.0))


@dataclass(frozen=True, slots=True)
class PathAmplitudeProfile:
    """Amplitude versus step index n (equivalently clock time) for one (N, theta).

    Arrays are aligned: entry i holds n = i, its log-magnitude, phase, and
    clock time t_c = (2n - N) delta_t.
    """

    params: ModelParams
    n: np.ndarray
    log_mag: np.ndarray
    phase: np.ndarray
    t_c: np.ndarray

    def amplitude(self, n: int) -> LogComplex:
        return LogComplex(float(self.log_mag[n]), float(self.phase[n]))

    def magnitudes(self, normalization: str = "max") -> np.ndarray:
        return normalize_magnitudes(self.log_mag, normalization)


def interference_profile(params: ModelParams) -> PathAmplitudeProfile:
    """Whole profile n = 0..N via prefix sums (O(N), symmetry-exact).

    Writing t_j = log|sin(j z/2)| and S the prefix sum of t, the product
    telescopes to log|I| = S[N] - (S[n] + S[N-n]), which is bitwise
    symmetric under n <-> N-n.
    """
    N = params.n_steps
    theta = params.theta
    n = np.arange(N + 1)
    if theta == 0.0:
        log_mag = _log_binomial(N, n)
        phase = np.zeros(N + 1)
    else:
        pole = _pole_scan(theta, N, N)
        if pole is not None:
            raise SingularDenominator(theta, N, *pole)
        z = theta / N
        s = np.sin(np.arange(1, N + 1) * (z / 2.0))
        t = np.log(np.abs(s))
        prefix = np.concatenate([[0.0], np.cumsum(t)])
        neg = np.concatenate([[0], np.cumsum(s < 0.0)])
        log_mag = prefix[N] - (prefix[n] + prefix[N - n])
        sign_flips = (neg[N] - neg[N - n]) + neg[n]
        phase = -n * (N - n) * (z / 2.0) + math.pi * (sign_flips % 2)
        phase = np.remainder(phase + math.pi, 2.0 * math.pi) - math.pi
    t_c = (2 * n - N) * params.delta_t
    return PathAmplitudeProfile(params, n, log_mag, phase, t_c)


def peak_positions(params: ModelParams) -> tuple[float, float]:
    """Analytic maxima n_pm = N (1/2 +- pi/theta); requires 2pi < theta < 4pi."""
    theta = params.theta
    if not (2.0 * math.pi < theta < 4.0 * math.pi):
        raise ThetaOutOfRange(
            f"theta = {theta!r} outside (2*pi, 4*pi); peak structure undefined"
        )
    N = params.n_steps
    return N * (0.5 + math.pi / theta), N * (0.5 - math.pi / theta)


def peak_approximant(params: ModelParams, branch: str, n) -> LogComplex:
    """Gaussian-times-phase approximant f_n g_n around the chosen maximum.

    branch '+' centres on n_plus, '-' on n_minus.  Valid for
    2pi < theta < 4pi where theta*tan(theta/4) is negative.
    """
    log_mag, phase = _approximant_arrays(params, branch, np.asarray(n, dtype=float))
    return LogComplex(float(log_mag), float(phase))


def approximant_log_profile(params: ModelParams, branch: str = "+"):
    """(log_mag, phase) arrays of the approximant sampled at n = 0..N."""
    n = np.arange(params.n_steps + 1, dtype=float)
    return _approximant_arrays(params, branch, n)


def _approximant_arrays(params: ModelParams, branch: str, n):
    n_plus, n_minus = peak_positions(params)
    if branch not in ("+", "-"):
        raise ValueError("branch must be '+' or '-'")
    centre = n_plus if branch == "+" else n_minus
    N = params.n_steps
    theta = params.theta
    damp = abs(theta * math.tan(theta / 4.0))
    dev2 = (n - centre) ** 2
    log_mag = -dev2 * damp / (2.0 * N)
    phase = -(n_plus * n_minus - dev2) * theta / (2.0 * N)
    phase = np.remainder(phase + math.pi, 2.0 * math.pi) - math.pi
    return log_mag, phase


def strict_argmax(values: np.ndarray, lo: int, hi: int, towards: float) -> int:
    """Index of the maximum of values[lo:hi], ties broken nearest `towards`.

    Raises FlatProfile when every entry of `values` is identical.
    """
    if values.max() == values.min():
        raise FlatProfile("profile has no strict maximum")
    window = values[lo:hi]
    m = window.max()
    ties = np.flatnonzero(window == m) + lo
    return int(ties[np.argmin(np.abs(ties - towards))])
