import math

import numpy as np
import pytest

from chronopath import (
    FlatProfile,
    ModelParams,
    PathAmplitudeProfile,
    ThetaOutOfRange,
    analytic_peaks,
    interference_profile,
    numeric_peaks,
    peak_spacing_bound,
    perturb_theta,
    theta_on_pole,
)

THETA_STAR = 2.23 * math.pi


@pytest.mark.parametrize(
    "n_steps,expected",
    [(300, 15.5), (1200, 31.1), (2600, 45.7), (4600, 60.8)],
)
def test_reference_clock_times(n_steps, expected):
    params = ModelParams(1.0, THETA_STAR, n_steps)
    analysis = analytic_peaks(params)
    assert analysis.t_c_peak / params.sigma_t == pytest.approx(expected, abs=0.05)


def test_weight_identities():
    for theta in (2.05 * math.pi, THETA_STAR, 3.7 * math.pi):
        params = ModelParams(1.0, theta, 500)
        pk = analytic_peaks(params)
        assert pk.a_plus - pk.a_minus == 1.0
        assert pk.a_plus + pk.a_minus == pytest.approx(theta / (2 * math.pi), rel=1e-12)
        assert pk.n_plus + pk.n_minus == pytest.approx(500, rel=1e-12)
        assert pk.n_plus - pk.n_minus == pytest.approx(
            2 * 500 * math.pi / theta, rel=1e-12
        )


def test_width_formula():
    params = ModelParams(2.0, THETA_STAR, 700)
    pk = analytic_peaks(params)
    assert pk.width_var_tc == pytest.approx(
        2.0 / abs(params.lam * math.tan(params.theta / 4.0)), rel=1e-14
    )


def test_theta_window_enforced():
    with pytest.raises(ThetaOutOfRange):
        analytic_peaks(ModelParams(1.0, 0.0, 100))  # T-invariant degeneracy
    with pytest.raises(ThetaOutOfRange):
        analytic_peaks(ModelParams(1.0, 2.0 * math.pi, 100))
    with pytest.raises(ThetaOutOfRange):
        analytic_peaks(ModelParams(1.0, 4.5 * math.pi, 100))


@pytest.mark.parametrize("theta_over_pi", [2.1, 2.23, 3.0, 3.9])
@pytest.mark.parametrize("n_steps", [300, 1000, 4600])
def test_numeric_matches_analytic_within_one(theta_over_pi, n_steps):
    theta = theta_over_pi * math.pi
    if theta_on_pole(theta, n_steps):
        theta = perturb_theta(theta, n_steps)
    params = ModelParams(1.0, theta, n_steps)
    n_hat_plus, n_hat_minus = numeric_peaks(interference_profile(params))
    pk = analytic_peaks(params)
    assert abs(n_hat_plus - pk.n_plus) <= 1.0
    assert abs(n_hat_minus - pk.n_minus) <= 1.0


def test_n1000_peak_index():
    params = ModelParams(1.0, THETA_STAR, 1000)
    n_hat_plus, _ = numeric_peaks(interference_profile(params))
    assert n_hat_plus in (948, 949)


def test_n300_scaled_peak_position():
    params = ModelParams(1.0, THETA_STAR, 300)
    n_hat_plus, _ = numeric_peaks(interference_profile(params))
    assert params.clock_time(n_hat_plus) / params.sigma_t == pytest.approx(15.5, abs=0.2)


def test_flat_theta_profile_reports_central_maximum():
    params = ModelParams(1.0, 0.0, 200)
    n_hat_plus, n_hat_minus = numeric_peaks(interference_profile(params))
    assert n_hat_plus == n_hat_minus == 100


def test_flat_profile_raises():
    params = ModelParams(1.0, 0.0, 10)
    profile = PathAmplitudeProfile(
        params,
        np.arange(11),
        np.zeros(11),
        np.zeros(11),
        (2 * np.arange(11) - 10) * params.delta_t,
    )
    with pytest.raises(FlatProfile):
        numeric_peaks(profile)


def test_monotone_divergence_of_peak_time():
    times = [
        analytic_peaks(ModelParams(1.0, THETA_STAR, n)).t_c_peak
        for n in (300, 1200, 2600, 4600)
    ]
    assert all(a < b for a, b in zip(times, times[1:]))


# -- spacing ------------------------------------------------------------------

@pytest.mark.parametrize("theta_over_pi", [2.001, 2.1, 2.23, 3.0, 3.5, 3.99])
def test_spacing_bound_at_n_min(theta_over_pi):
    sigma_t, delta_t_min = 1.0, 0.01
    theta = theta_over_pi * math.pi
    params = ModelParams(sigma_t, theta, 1, delta_t_min)
    n_min = params.n_min
    params = ModelParams(sigma_t, theta, n_min, delta_t_min)
    spacing, bound_ok = peak_spacing_bound(params)
    assert bound_ok
    assert spacing < delta_t_min / 2.0  # the strict inequality itself


def test_spacing_scales_as_inverse_sqrt_n():
    sigma_t, delta_t_min = 1.0, 0.01
    params1 = ModelParams(sigma_t, THETA_STAR, 10000, delta_t_min)
    params4 = ModelParams(sigma_t, THETA_STAR, 40000, delta_t_min)
    s1, _ = peak_spacing_bound(params1)
    s4, _ = peak_spacing_bound(params4)
    assert s4 == pytest.approx(s1 / 2.0, rel=1e-4)


def test_spacing_limit_approaches_half_floor():
    # theta -> 2 pi from above at N = n_min: spacing -> delta_t_min / 2 from below
    sigma_t, delta_t_min = 1.0, 0.001
    theta = 2.0 * math.pi + 1e-9
    n_min = math.ceil((sigma_t / delta_t_min) ** 2)
    spacing, bound_ok = peak_spacing_bound(
        ModelParams(sigma_t, theta, n_min, delta_t_min)
    )
    assert bound_ok
    assert spacing < delta_t_min / 2.0
    assert spacing == pytest.approx(delta_t_min / 2.0, rel=1e-3)


def test_exact_vs_large_n_spacing():
    params = ModelParams(1.0, THETA_STAR, 100000, 0.01)
    pk = analytic_peaks(params)
    assert pk.spacing == pytest.approx(pk.spacing_large_n, rel=1e-4)
    assert pk.spacing < pk.spacing_large_n  # sqrt(N+1)-sqrt(N) < 1/(2 sqrt(N))


def test_spacing_requires_floor():
    with pytest.raises(ValueError):
        peak_spacing_bound(ModelParams(1.0, THETA_STAR, 100))


def test_minimum_representative_clock_time():
    params = ModelParams(1.0, THETA_STAR, 100, 0.01)
    pk = analytic_peaks(params)
    assert pk.t_c_min_peak == pytest.approx(
        2 * math.pi / (params.lam * 0.01), rel=1e-14
    )


# -- Gaussian weight second moment ---------------------------------------------

def test_gaussian_weight_variance():
    n_steps, theta = 1000, THETA_STAR
    params = ModelParams(1.0, theta, n_steps)
    pk = analytic_peaks(params)
    damp = abs(theta * math.tan(theta / 4.0))
    n = np.arange(n_steps + 1)
    weights = np.exp(-((n - pk.n_plus) ** 2) * damp / n_steps)  # |g_n|^2
    weights /= weights.sum()
    mean = (n * weights).sum()
    var = ((n - mean) ** 2 * weights).sum()
    assert var == pytest.approx(n_steps / (2.0 * damp), rel=0.01)


def test_n100_maxima_near_analytic_positions():
    params = ModelParams(1.0, THETA_STAR, 100)
    n_hat_plus, n_hat_minus = numeric_peaks(interference_profile(params))
    assert abs(n_hat_plus - 100 * (0.5 + math.pi / THETA_STAR)) <= 1.0
    assert abs(n_hat_minus - 100 * (0.5 - math.pi / THETA_STAR)) <= 1.0
