import cmath
import math

import numpy as np
import pytest

from conftest import ALL_2D_MODES, origin_grid
from wavepacket import (
    Grid2D,
    HermiteGauss,
    HermiteGauss1D,
    LaguerreGauss,
    PhysicalParams,
    closed_form_moments,
    eval_density,
    eval_gradient,
    eval_hg,
    eval_hg_1d,
    eval_lg,
    evaluate,
    paraxial_map,
    parse_mode,
    propagate,
    sample,
    time_scale,
)
from wavepacket.core_math import MAX_ORDER, hermite_poly
from wavepacket.observables import packet_width, schrodinger_residual

MODES_WITH_1D = ALL_2D_MODES + [HermiteGauss1D(0), HermiteGauss1D(1), HermiteGauss1D(3)]


@pytest.mark.parametrize("m, hbar, w0, expected", [(1, 1, 1, 0.5), (2, 1, 1, 1.0), (1, 0.5, 2, 4.0)])
def test_time_scale(m, hbar, w0, expected):
    assert time_scale(PhysicalParams(mass=m, hbar=hbar, waist=w0)) == expected


def test_paraxial_map(odd_units):
    assert paraxial_map(PhysicalParams(mass=1, hbar=1)) == 1
    assert paraxial_map(PhysicalParams(mass=3, hbar=1)) == 3
    k = paraxial_map(odd_units)
    assert k * odd_units.waist**2 / 2 == pytest.approx(time_scale(odd_units), rel=1e-15)


@pytest.mark.parametrize("bad", [dict(mass=0), dict(hbar=-1), dict(waist=float("nan"))])
def test_params_must_be_positive(bad):
    with pytest.raises(ValueError):
        PhysicalParams(**bad)


def test_mode_validation_and_parsing():
    assert parse_mode("hg:2,1") == HermiteGauss(2, 1)
    assert parse_mode("lg:-3") == LaguerreGauss(-3)
    assert parse_mode("hg1d:4") == HermiteGauss1D(4)
    for text in ("hg:1", "lg:a", "foo:1", "lg:1,2"):
        with pytest.raises(ValueError):
            parse_mode(text)
    with pytest.raises(ValueError):
        HermiteGauss(-1, 0)
    with pytest.raises(ValueError):
        LaguerreGauss(MAX_ORDER + 1)
    LaguerreGauss(-MAX_ORDER)


def test_eval_hg_examples(unit):
    assert eval_hg(HermiteGauss(0, 0), unit, 0, 0, 0) == pytest.approx(math.sqrt(2 / math.pi), rel=1e-15)
    y = np.linspace(-3, 3, 11)
    for t in (-1.0, 0.0, 0.3, 2.0):
        assert np.all(eval_hg(HermiteGauss(1, 2), unit, 0.0, y, t) == 0)


def test_eval_hg_at_t0_matches_propagated_gaussian(unit):
    t0 = unit.time_scale
    psi = eval_hg(HermiteGauss(0, 0), unit, 0.0, 0.0, t0)
    assert cmath.phase(psi) == pytest.approx(-math.pi / 4, abs=1e-14)
    assert abs(psi) == pytest.approx(math.sqrt(2 / math.pi) / math.sqrt(2), rel=1e-14)
    # independent route: spectral evolution of the t=0 samples
    grid = origin_grid(10.0)
    f = propagate(sample(HermiteGauss(0, 0), unit, grid, 0.0), t0)
    centre = f.values[grid.ny // 2, grid.nx // 2]
    assert abs(centre - psi) < 1e-8


def test_eval_hg_1d_examples():
    p = PhysicalParams(waist=1.3)
    n0 = HermiteGauss1D(0)
    assert eval_hg_1d(n0, p, 0.0, 0.0) == pytest.approx((2 / (math.pi * 1.3**2)) ** 0.25, rel=1e-15)
    for t in (-1.0, 0.0, 2.5):
        assert eval_hg_1d(HermiteGauss1D(1), p, 0.0, t) == 0
    t0 = p.time_scale
    x = np.linspace(-60, 60, 2**14, endpoint=False)
    for mode, t in ((n0, 0.0), (n0, 3 * t0), (HermiteGauss1D(3), 3 * t0)):
        norm = np.sum(np.abs(eval_hg_1d(mode, p, x, t)) ** 2) * (x[1] - x[0])
        assert norm == pytest.approx(1.0, abs=1e-10)


def test_printed_1d_prefactor_is_not_normalized():
    # 1/(2^n n!) instead of 1/sqrt(2^n n!) breaks unit norm for n >= 1
    p = PhysicalParams()
    x = np.linspace(-12, 12, 4096, endpoint=False)
    dx = x[1] - x[0]
    for n in (1, 2, 3):
        psi = eval_hg_1d(HermiteGauss1D(n), p, x, 0.0)
        assert np.sum(np.abs(psi) ** 2) * dx == pytest.approx(1.0, abs=1e-12)
        ratio = math.sqrt(2**n * math.factorial(n)) / (2**n * math.factorial(n))
        assert np.sum(np.abs(psi * ratio) ** 2) * dx < 0.9


def test_eval_lg_examples(unit):
    for t in (-1.0, 0.0, 0.7):
        assert eval_lg(1, unit, 0.0, 0.0, t) == 0
    assert eval_lg(0, unit, 0.0, 0.0, 0.0) == pytest.approx(math.sqrt(2 / math.pi), rel=1e-15)


def test_lg1_ring_radius_on_fine_radial_grid(unit):
    r = np.linspace(0, 3, 30001)
    rho = np.abs(eval_lg(1, unit, r, 0.0, 0.0)) ** 2
    # analytic maximum of r^2 exp(-2 r^2 / w0^2)
    assert abs(r[np.argmax(rho)] - unit.waist / math.sqrt(2)) <= r[1] - r[0]


def test_lg0_equals_hg00(odd_units):
    rng = np.random.default_rng(3)
    x, y = rng.uniform(-4, 4, (2, 500))
    for t in (-2.0, 0.0, 0.4, 3.0):
        np.testing.assert_allclose(eval_lg(0, odd_units, x, y, t),
                                   eval_hg(HermiteGauss(0, 0), odd_units, x, y, t),
                                   rtol=4e-16, atol=1e-300)


def test_normalization_of_every_mode(unit):
    t0 = unit.time_scale
    for mode in ALL_2D_MODES:
        for t in (-2 * t0, 0.0, t0, 5 * t0):
            hw = 6 * packet_width(unit, t)
            grid = Grid2D(half_width=hw, nx=256, ny=256)
            X, Y = grid.mesh()
            norm = np.sum(np.abs(evaluate(mode, unit, X, Y, t)) ** 2) * grid.dx * grid.dy
            assert norm == pytest.approx(1.0, abs=1e-8), (mode, t)


def test_printed_hg_amplitude_would_grow_the_norm(unit):
    # without the 1/sqrt(1 + tau^2) factor the norm is 1 + tau^2
    t0 = unit.time_scale
    grid = Grid2D(half_width=20.0, nx=256, ny=256)
    X, Y = grid.mesh()
    psi = evaluate(HermiteGauss(1, 0), unit, X, Y, 2 * t0) * math.sqrt(1 + 4)
    assert np.sum(np.abs(psi) ** 2) * grid.dx * grid.dy == pytest.approx(5.0, rel=1e-10)


@pytest.mark.parametrize("mode", MODES_WITH_1D, ids=str)
def test_gradient_matches_finite_differences(mode, odd_units):
    rng = np.random.default_rng(11)
    t0 = odd_units.time_scale
    h = 1e-5 * odd_units.waist
    for _ in range(100):
        t = rng.uniform(-2, 2) * t0
        w = packet_width(odd_units, t)
        x, y = rng.uniform(-2.5 * w, 2.5 * w, 2)
        if isinstance(mode, HermiteGauss1D):
            y = 0.0
        dx, dy = eval_gradient(mode, odd_units, x, y, t)
        fdx = (evaluate(mode, odd_units, x + h, y, t) - evaluate(mode, odd_units, x - h, y, t)) / (2 * h)
        fdy = (evaluate(mode, odd_units, x, y + h, t) - evaluate(mode, odd_units, x, y - h, t)) / (2 * h)
        # tolerance relative to the local gradient, floored at a fraction of the peak slope
        floor = 1e-3 / (w * w)
        assert abs(dx - fdx) <= 1e-6 * max(abs(dx), floor)
        assert abs(dy - fdy) <= 1e-6 * max(abs(dy), floor)


def test_gradient_gaussian_extremum(unit):
    dx, dy = eval_gradient(HermiteGauss(0, 0), unit, 0.0, 0.0, 0.0)
    assert dx == 0 and dy == 0


def test_lg1_log_derivative_on_axis(unit):
    for x in (-1.5, 0.3, 0.8, 2.0):
        psi = eval_lg(1, unit, x, 0.0, 0.0)
        _, dy = eval_gradient(LaguerreGauss(1), unit, x, 0.0, 0.0)
        assert dy / psi == pytest.approx(1j / x, rel=1e-14)


def test_closed_form_moment_examples():
    p = PhysicalParams()
    assert closed_form_moments(LaguerreGauss(1), p, 0.0).r2 == 1.0
    assert closed_form_moments(LaguerreGauss(2), p, 0.0).energy == 3.0
    m0 = closed_form_moments(LaguerreGauss(0), p, 0.0)
    assert m0.p2 == 2.0 and m0.lz == 0.0
    m = closed_form_moments(LaguerreGauss(-2), PhysicalParams(hbar=0.5), 1.0)
    assert m.lz == -1.0
    assert (m.mean_x, m.mean_y, m.mean_px, m.mean_py) == (0, 0, 0, 0)
    hg = closed_form_moments(HermiteGauss(2, 1), p, p.time_scale)
    assert hg.r2 == pytest.approx(4 / 2 * 2)
    assert hg.p2 == pytest.approx(8.0)
    assert hg.energy == hg.p2 / 2


@pytest.mark.parametrize("mode", [HermiteGauss(0, 0), HermiteGauss(2, 1), LaguerreGauss(1), LaguerreGauss(-2)],
                         ids=str)
def test_schrodinger_residual_second_order(mode, unit):
    t0 = unit.time_scale
    grid = Grid2D(half_width=9.0, nx=256, ny=256)
    dts = [0.02 * t0, 0.01 * t0, 0.005 * t0]
    res = [schrodinger_residual(mode, unit, grid, 0.3 * t0, dt) for dt in dts]
    for a, b in zip(res, res[1:]):
        assert 3.5 < a / b < 4.5


@pytest.mark.parametrize("mu, nu", [(0, 0), (2, 0), (2, 2), (0, 4)])
def test_gouy_phase_at_origin(mu, nu, odd_units):
    sign = math.copysign(1.0, hermite_poly(mu, 0.0) * hermite_poly(nu, 0.0))
    t0 = odd_units.time_scale
    for tau in (-3.0, -0.5, 0.0, 0.25, 1.0, 4.0):
        psi = sign * eval_hg(HermiteGauss(mu, nu), odd_units, 0.0, 0.0, tau * t0)
        expected = -(mu + nu + 1) * math.atan(tau)
        diff = (cmath.phase(psi) - expected + math.pi) % (2 * math.pi) - math.pi
        assert abs(diff) < 1e-10


@pytest.mark.parametrize("ell", [1, 2, 3])
def test_conjugation_symmetry(ell, odd_units):
    rng = np.random.default_rng(ell)
    x, y = rng.uniform(-3, 3, (2, 200))
    for t in (-1.0, 0.0, 0.6):
        np.testing.assert_array_equal(eval_lg(-ell, odd_units, x, y, t),
                                      np.conj(eval_lg(ell, odd_units, x, y, -t)))
    assert closed_form_moments(LaguerreGauss(-ell), odd_units, 0).lz == -closed_form_moments(
        LaguerreGauss(ell), odd_units, 0).lz


@pytest.mark.parametrize("mode", MODES_WITH_1D, ids=str)
def test_analytic_density(mode, odd_units):
    grid = Grid2D(half_width=8.0, nx=64, ny=64)
    X, Y = grid.mesh()
    for t in (0.0, 0.8, 3.0):
        rho = eval_density(mode, odd_units, X, Y, t)
        np.testing.assert_array_equal(rho, eval_density(mode, odd_units, X, Y, -t))
        np.testing.assert_allclose(rho, np.abs(evaluate(mode, odd_units, X, Y, t)) ** 2,
                                   rtol=1e-13, atol=1e-300)


def test_high_order_stays_finite(unit):
    grid = Grid2D(half_width=14.0, nx=256, ny=256)
    X, Y = grid.mesh()
    for mode in (HermiteGauss(MAX_ORDER, 0), LaguerreGauss(-MAX_ORDER)):
        psi = evaluate(mode, unit, X, Y, 0.3)
        assert np.all(np.isfinite(psi))
