"""Spectral layer: TrigPoly, windows, sampling analysis, Fourier quadrature."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

import latsamp as ls
from latsamp import (
    TrigPoly,
    analyze,
    apply_window,
    br_window,
    build_cache,
    corpus,
    dirichlet_window,
    fejer_window,
    fourier_coefficients,
    kernel_eval,
    partial_sum,
    subtract_poly,
    table_window,
    vp_mean,
    zero_poly,
)


def random_poly(n, rng, real=False):
    c = rng.standard_normal(2 * n + 1) + 1j * rng.standard_normal(2 * n + 1)
    if real:
        c = c + np.conj(c[::-1])
    return TrigPoly(c)


def test_eval_against_direct_sum():
    rng = np.random.default_rng(0)
    p = random_poly(5, rng)
    x = rng.uniform(-np.pi, np.pi, 64)
    direct = np.zeros_like(x, dtype=complex)
    for k, c in zip(p.freqs, p.coeffs):
        direct += c * np.exp(1j * k * x)
    assert_allclose(p.at(x), direct, atol=1e-12)


def test_degree_and_coeff_lookup():
    p = TrigPoly(np.array([1.0, 2.0, 3.0, 4.0, 5.0], dtype=complex))
    assert p.degree == 2
    assert list(p.freqs) == [-2, -1, 0, 1, 2]
    assert p.coeff(0) == 3.0
    assert p.coeff(-2) == 1.0
    assert p.coeff(7) == 0.0  # out of band


def test_arithmetic_consistency():
    rng = np.random.default_rng(1)
    p = random_poly(3, rng)
    q = random_poly(6, rng)
    x = np.linspace(-np.pi, np.pi, 50)
    assert_allclose((p + q).at(x), p.at(x) + q.at(x), atol=1e-12)
    assert_allclose((p - q).at(x), p.at(x) - q.at(x), atol=1e-12)
    assert_allclose((p * 2.5).at(x), 2.5 * p.at(x), atol=1e-12)


def test_derivative_multiplier():
    rng = np.random.default_rng(2)
    p = random_poly(4, rng)
    d = p.derivative(1)
    assert_allclose(d.coeffs, p.coeffs * 1j * p.freqs, atol=0)
    # second derivative by two routes
    assert_allclose(p.derivative(2).coeffs, d.derivative(1).coeffs, atol=0)
    assert zero_poly().derivative(1).degree == 0


def test_truncate():
    rng = np.random.default_rng(3)
    p = random_poly(6, rng)
    t = p.truncate(2)
    assert t.degree == 2
    assert_allclose(t.coeffs, p.coeffs[4:9], atol=0)


def test_on_uniform_grid_matches_at():
    rng = np.random.default_rng(4)
    p = random_poly(7, rng)
    m = 40
    grid = -np.pi + 2 * np.pi * np.arange(m) / m
    assert_allclose(p.on_uniform_grid(m), p.at(grid), atol=1e-11)
    with pytest.raises(ValueError):
        p.on_uniform_grid(10)  # under-resolves degree 7


# ----------------------------------------------------------------------------
# analyze: the (2n+1)-point sampling transform and aliasing
# ----------------------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 4, 13])
def test_analyze_recovers_polynomial(n):
    rng = np.random.default_rng(5 + n)
    p = random_poly(n, rng)
    samples = p.sample_uniform(2 * n + 1)
    q = analyze(samples)
    assert q.degree == n
    assert_allclose(q.coeffs, p.coeffs, atol=1e-12)


def test_analyze_aliases_to_band():
    """e^{i(n+1)x} sampled on 2n+1 nodes is indistinguishable from e^{-inx}."""
    n = 6
    t = 2 * np.pi * np.arange(2 * n + 1) / (2 * n + 1)
    q = analyze(np.exp(1j * (n + 1) * t))
    want = np.zeros(2 * n + 1, dtype=complex)
    want[0] = 1.0  # frequency -n
    assert_allclose(q.coeffs, want, atol=1e-12)


def test_analyze_constant():
    q = analyze(np.full(9, 2.0))
    assert_allclose(q.coeff(0), 2.0, atol=1e-14)
    assert np.max(np.abs(q.coeffs[q.freqs != 0])) < 1e-14


# ----------------------------------------------------------------------------
# windows
# ----------------------------------------------------------------------------


def test_window_profiles():
    xi = np.array([-1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5])
    assert_allclose(dirichlet_window()(xi), [0, 1, 1, 1, 1, 1, 0], atol=0)
    assert_allclose(fejer_window()(xi), [0, 0, 0.5, 1.0, 0.5, 0, 0], atol=1e-15)
    assert_allclose(br_window(1.0)(xi), [0, 0, 0.75, 1.0, 0.75, 0, 0], atol=1e-15)
    assert_allclose(br_window(2.0)(np.array([0.5])), [0.5625], atol=1e-15)


def test_br_window_validates_alpha():
    with pytest.raises(ValueError):
        br_window(0.0)
    with pytest.raises(ValueError):
        br_window(-1.0)


def test_table_window_interpolates():
    grid = np.linspace(-1, 1, 201)
    w = table_window(grid, 1.0 - np.abs(grid), name="tri")
    xi = np.linspace(-1, 1, 57)
    assert_allclose(w(xi), fejer_window()(xi), atol=1e-12)
    with pytest.raises(ValueError):
        table_window(np.linspace(-0.5, 1, 11), np.ones(11))


def test_apply_window_scales_coefficients():
    rng = np.random.default_rng(8)
    n = 5
    p = random_poly(n, rng)
    g = apply_window(p, fejer_window(), n)
    assert_allclose(g.coeffs, p.coeffs * (1 - np.abs(p.freqs) / n), atol=1e-15)
    # band-edge coefficients die under the triangle profile
    assert g.coeff(n) == 0.0 and g.coeff(-n) == 0.0


def test_fejer_kernel_nonnegative_unit_mean():
    n = 12
    x = np.linspace(-np.pi, np.pi, 803)
    vals = kernel_eval(fejer_window(), n, x)
    assert np.max(np.abs(vals.imag)) < 1e-10
    assert vals.real.min() > -1e-10
    # mean over an oversampled uniform grid picks out the k=0 coefficient
    m = 4 * n + 3
    grid = 2 * np.pi * np.arange(m) / m
    assert_allclose(np.mean(kernel_eval(fejer_window(), n, grid)).real, 1.0, atol=1e-12)


def test_dirichlet_kernel_peak():
    n = 9
    assert_allclose(kernel_eval(dirichlet_window(), n, np.array([0.0]))[0],
                    2 * n + 1, atol=1e-10)


# ----------------------------------------------------------------------------
# Fourier coefficients by quadrature
# ----------------------------------------------------------------------------


def test_fourier_coefficients_square_wave():
    """The square wave has c_k = 2/(i pi k) at odd k, zero elsewhere."""
    sq = corpus()["square"]
    kmax = 9
    got = fourier_coefficients(sq, kmax)
    ks = np.arange(-kmax, kmax + 1)
    want = np.zeros_like(ks, dtype=complex)
    odd = ks % 2 != 0
    want[odd] = 2.0 / (1j * np.pi * ks[odd])
    assert_allclose(got, want, atol=1e-10)


def test_fourier_coefficients_pure_mode():
    f = corpus()["exp3"]
    got = fourier_coefficients(f, 5)
    want = np.zeros(11, dtype=complex)
    want[8] = 1.0  # frequency +3
    assert_allclose(got, want, atol=1e-12)


def test_fourier_coefficients_of_poly_exact():
    rng = np.random.default_rng(11)
    p = random_poly(6, rng)
    got = fourier_coefficients(p, 6)
    assert_allclose(got, p.coeffs, atol=1e-12)


def test_partial_sum_square():
    sq = corpus()["square"]
    s = partial_sum(sq, 5)
    assert s.degree == 5
    assert_allclose(s.coeff(3), 2.0 / (3j * np.pi), atol=1e-10)
    assert abs(s.coeff(2)) < 1e-10


@pytest.mark.parametrize("n", [2, 5])
def test_vp_mean_reproduces_low_degrees(n):
    rng = np.random.default_rng(21 + n)
    p = random_poly(n, rng)
    v = vp_mean(p, n)
    x = np.linspace(-np.pi, np.pi, 101)
    assert_allclose(v.at(x), p.at(x), atol=1e-10)
    assert v.degree <= 2 * n


def test_vp_mean_from_cache():
    f = corpus()["sine"]
    cache = build_cache(f, resolution=512)
    v = vp_mean(cache, 4)
    x = np.linspace(-np.pi, np.pi, 64)
    assert_allclose(v.at(x).real, np.sin(x), atol=1e-9)


def test_subtract_poly_residual():
    f = corpus()["smooth"]  # sin x + cos 2x, a degree-2 polynomial
    cache = build_cache(f, resolution=256)
    p = partial_sum(cache, 2)
    resid = subtract_poly(cache, p)
    assert abs(complex(resid.total)) < 1e-9
    x = np.linspace(-np.pi, np.pi, 40)
    assert np.max(np.abs(resid.values_at(x))) < 1e-7


def test_analyze_rejects_even_counts():
    with pytest.raises(ValueError):
        analyze(np.ones(8))
