import math

import pytest

from chronopath import (
    InvalidFraction,
    PLANCK_TIME,
    ScalesInput,
    ThetaOutOfRange,
    physical_scales,
    solve_min_uncertainty_theta,
    truncated_gaussian_moments,
    truncated_gaussian_variance,
    variance_bounds,
)

HALF_NORMAL_DEFICIT = 1.0 - 2.0 / math.pi


def test_theta_star_value():
    theta_star = solve_min_uncertainty_theta()
    assert 2.2287 * math.pi <= theta_star <= 2.2290 * math.pi
    assert theta_star == pytest.approx(2.2288 * math.pi, abs=1e-4 * math.pi)


def test_theta_star_plugback():
    theta_star = solve_min_uncertainty_theta()
    assert math.tan(theta_star / 4.0) == pytest.approx(-5.504, abs=1e-3)
    assert 2 * math.pi < theta_star < 4 * math.pi


def test_theta_star_defines_variance_consistency():
    theta_star = solve_min_uncertainty_theta()
    for lam in (1.0, 3.7e12):
        rep = variance_bounds(theta_star, lam)
        assert (
            abs(rep.var_tc_bound - rep.var_tc_energy_time) / rep.var_tc_energy_time
            <= 1e-10
        )


def test_variance_values():
    rep = variance_bounds(2.5 * math.pi, 1.0)
    assert rep.var_h == 0.25
    assert rep.var_tc_energy_time == pytest.approx(HALF_NORMAL_DEFICIT)
    assert rep.var_tc_bound == pytest.approx(2.0 / abs(math.tan(2.5 * math.pi / 4.0)))


def test_energy_time_product_is_lambda_free():
    theta_star = solve_min_uncertainty_theta()
    products = []
    for lam in (1.0, 4.0, 9.9e30):
        rep = variance_bounds(theta_star, lam)
        products.append(math.sqrt(rep.var_h * rep.var_tc_energy_time))
    expected = 0.5 * math.sqrt(HALF_NORMAL_DEFICIT)
    for p in products:
        assert p == pytest.approx(expected, rel=1e-12)
    assert expected == pytest.approx(0.3014, abs=2e-4)


def test_variance_bounds_window():
    with pytest.raises(ThetaOutOfRange):
        variance_bounds(math.pi, 1.0)
    with pytest.raises(ThetaOutOfRange):
        variance_bounds(4.0 * math.pi, 1.0)


def test_tc_min_peak_field():
    rep = variance_bounds(2.3 * math.pi, 2.0, delta_t_min=0.5)
    assert rep.tc_min_peak == pytest.approx(2.0 * math.pi / (2.0 * 0.5), rel=1e-14)


# -- half-normal quadrature -----------------------------------------------------

def test_truncated_gaussian_variance_against_closed_form():
    var = truncated_gaussian_variance(1.0)
    closed = HALF_NORMAL_DEFICIT / 4.0
    assert closed == pytest.approx(0.0908450569, abs=1e-9)
    assert abs(var - closed) / closed <= 1e-3


def test_truncated_gaussian_scaling():
    v1 = truncated_gaussian_variance(1.0)
    v2 = truncated_gaussian_variance(2.0)
    assert v2 == pytest.approx(v1 / 4.0, rel=1e-12)


def test_truncated_gaussian_mean_self_consistency():
    mean_a, _ = truncated_gaussian_moments(1.0, 4001)
    mean_b, _ = truncated_gaussian_moments(1.0, 8001)
    assert mean_a == pytest.approx(mean_b, rel=1e-9)
    # half-normal mean with scale sigma = 1/2: sigma sqrt(2/pi)
    assert mean_a == pytest.approx(0.5 * math.sqrt(2.0 / math.pi), rel=1e-6)


def test_truncated_gaussian_grid_floor():
    with pytest.raises(ValueError):
        truncated_gaussian_moments(1.0, 999)


# -- physical scales -------------------------------------------------------------

def test_meson_mode_at_unit_fraction():
    rep = physical_scales(ScalesInput(f=1.0))
    assert rep.lam == 1e57
    assert rep.tc_min_peak == pytest.approx(1.1635e-13, rel=1e-3)
    assert rep.delta_tc == pytest.approx(1.9063e-29, rel=1e-3)
    # the reported orders
    assert 0.5e-13 <= rep.tc_min_peak <= 2e-13
    assert 0.5e-29 <= rep.delta_tc <= 2e-29


def test_meson_mode_fraction_scaling():
    quarter = physical_scales(ScalesInput(f=0.25))
    unit = physical_scales(ScalesInput(f=1.0))
    assert quarter.lam == pytest.approx(unit.lam / 2.0, rel=1e-12)
    assert quarter.tc_min_peak == pytest.approx(unit.tc_min_peak * 2.0, rel=1e-12)
    assert quarter.delta_tc == pytest.approx(unit.delta_tc * math.sqrt(2.0), rel=1e-12)


def test_nature_mode():
    rep = physical_scales(ScalesInput(), mode="nature")
    assert rep.lam == pytest.approx(2.1547e87, rel=1e-3)
    assert rep.tc_min_peak == pytest.approx(PLANCK_TIME, rel=1e-12)
    assert rep.delta_tc_over_dt_min == pytest.approx(0.2405, abs=1e-3)
    assert rep.delta_tc_over_dt_min == pytest.approx(
        math.sqrt(HALF_NORMAL_DEFICIT / (2.0 * math.pi)), rel=1e-12
    )


def test_lambda_override():
    rep = physical_scales(ScalesInput(lambda_override=4.0e50))
    assert rep.lam == 4.0e50
    assert rep.tc_min_peak == pytest.approx(
        2.0 * math.pi / (4.0e50 * PLANCK_TIME), rel=1e-12
    )


def test_dimensional_audit():
    for mode in ("meson", "nature"):
        rep = physical_scales(ScalesInput(f=0.3), mode=mode)
        assert rep.tc_min_peak * rep.lam * rep.delta_t_min == pytest.approx(
            2.0 * math.pi, rel=1e-12
        )


def test_tc_min_monotone_in_lambda():
    low = physical_scales(ScalesInput(lambda_override=1e56))
    high = physical_scales(ScalesInput(lambda_override=1e58))
    assert high.tc_min_peak < low.tc_min_peak


@pytest.mark.parametrize("f", [0.0, -0.2, 1.5])
def test_invalid_fraction(f):
    with pytest.raises(InvalidFraction):
        ScalesInput(f=f)


def test_unknown_mode():
    with pytest.raises(ValueError):
        physical_scales(ScalesInput(), mode="axion")
