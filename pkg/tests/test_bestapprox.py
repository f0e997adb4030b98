"""Best approximation: projections, refined descent, the one-sided LP, sums."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from latsamp import (
    TrigPoly,
    best_approx,
    besov_sum,
    build_cache,
    corpus,
    lemder_check,
    one_sided_best,
    parse_spec,
    poly_norm,
    vp_mean,
)
from latsamp.bestapprox import LP_MAX_DEGREE, LP_MAX_GRID

L1 = parse_spec("l1")
L2 = parse_spec("l2")
C = corpus()


def square_tail_l2(n):
    """Exact E_n(square)_2: the series has |c_k| = 2/(pi k) at odd k."""
    odd = np.arange(1, n + 1, 2, dtype=float)
    return float(np.sqrt((8 / np.pi ** 2) * (np.pi ** 2 / 8 - np.sum(odd ** -2))))


def sawtooth_tail_l2(n):
    """Exact E_n(sawtooth)_2 from |c_k| = 1/(2k)."""
    ks = np.arange(1, n + 1, dtype=float)
    return float(np.sqrt(0.5 * (np.pi ** 2 / 6 - np.sum(ks ** -2))))


# ----------------------------------------------------------------------------
# L2 projection
# ----------------------------------------------------------------------------


@pytest.mark.parametrize("n,value", [
    (4, 0.315225723114),
    (8, 0.224504440230),
    (16, 0.159051853007),
])
def test_best_l2_square_frozen_values(n, value):
    res = best_approx(C["square"], n, L2)
    assert_allclose(res.value, value, atol=2e-10)
    assert_allclose(res.value, square_tail_l2(n), rtol=1e-10)
    assert res.poly.degree <= n


@pytest.mark.parametrize("n", [4, 8, 32])
def test_best_l2_sawtooth(n):
    res = best_approx(C["sawtooth"], n, L2)
    assert_allclose(res.value, sawtooth_tail_l2(n), rtol=1e-9)


def test_best_l2_projection_coefficients():
    """The optimal degree-n polynomial is the truncated Fourier series."""
    res = best_approx(C["square"], 5, L2)
    assert_allclose(res.poly.coeff(3), 2.0 / (3j * np.pi), atol=1e-10)
    assert abs(res.poly.coeff(2)) < 1e-10


def test_best_l2_zero_for_member():
    res = best_approx(C["sine"], 3, L2)
    assert res.value < 1e-9


def test_best_l2_optimality_against_perturbations():
    """Any perturbation of the projection does worse in L2."""
    f = C["cusp15"]
    n = 6
    res = best_approx(f, n, L2)
    cache = build_cache(f, n_scale=4 * n)
    rng = np.random.default_rng(0)
    for _ in range(8):
        bump = rng.standard_normal(2 * n + 1) + 1j * rng.standard_normal(2 * n + 1)
        cand = TrigPoly(res.poly.coeffs + 1e-2 * bump)
        from latsamp import subtract_poly, norm
        worse = norm(subtract_poly(cache, cand), L2)
        assert worse >= res.value - 1e-12


def test_refined_never_worse_than_start():
    f = C["square"]
    for spec in (L1, parse_spec("lp:1.5")):
        base = best_approx(f, 6, spec, method="auto")
        ref = best_approx(f, 6, spec, method="refined")
        print(spec.id, "auto:", base.value, "refined:", ref.value)
        assert ref.value <= base.value + 1e-12


def test_best_approx_methods_and_validation():
    with pytest.raises(ValueError):
        best_approx(C["sine"], 4, L2, method="magic")
    res = best_approx(C["sine"], 4, L2, method="auto")
    assert res.method in ("l2-projection", "projection", "auto", "vp", "exact")


def test_best_approx_monotone_in_degree():
    vals = [best_approx(C["cusp05"], n, L2).value for n in (2, 4, 8, 16)]
    assert all(a >= b - 1e-12 for a, b in zip(vals, vals[1:]))


# ----------------------------------------------------------------------------
# one-sided LP
# ----------------------------------------------------------------------------


def test_one_sided_sine_is_zero():
    res = one_sided_best(C["sine"], 4, L1)
    assert res.value == 0.0
    assert res.converged


def test_one_sided_sandwich_and_duality():
    f = C["square"]
    res = one_sided_best(f, 8, L1)
    assert res.converged
    assert res.value > 0.2  # jumps force a visible one-sided gap
    assert res.feasibility_gap <= 1e-7
    assert res.duality_gap <= 1e-8
    # the sandwich holds at the constraint grid (between grid points a jump
    # target can poke through; that is the nature of a discretized LP)
    m = res.grid_size
    y = -np.pi + 2 * np.pi * np.arange(m) / m
    assert np.min(res.upper.at(y).real - f(y)) > -1e-7
    assert np.min(f(y) - res.lower.at(y).real) > -1e-7


def test_one_sided_sandwich_off_grid_for_continuous_target():
    f = C["cusp15"]
    res = one_sided_best(f, 8, L1)
    x = np.linspace(-np.pi, np.pi, 907, endpoint=False)
    assert np.min(res.upper.at(x).real - f(x)) > -1e-3
    assert np.min(f(x) - res.lower.at(x).real) > -1e-3


def test_one_sided_objective_is_mean_gap():
    """value = c_0(U - L): the cell rule is exact for the polynomial gap."""
    res = one_sided_best(C["square"], 6, L1)
    gap = res.upper - res.lower
    assert_allclose(res.value, float(np.real(gap.coeff(0))), atol=1e-9)
    # ||gap||_1 >= mean(gap); off-grid dips keep the two within a hair
    n1 = poly_norm(gap, L1)
    assert n1 >= res.value - 1e-9
    assert_allclose(n1, res.value, rtol=1e-3)


def test_one_sided_dominates_unrestricted():
    for n in (4, 8, 16):
        os_res = one_sided_best(C["square"], n, L1)
        free = best_approx(C["square"], n, L1, method="refined")
        assert os_res.value >= free.value - 1e-6


def test_one_sided_monotone_in_degree():
    vals = [one_sided_best(C["sawtooth"], n, L1).value for n in (4, 8, 16)]
    print("sawtooth one-sided:", vals)
    assert vals[0] >= vals[1] >= vals[2] > 0


def test_one_sided_validation():
    with pytest.raises(ValueError):
        one_sided_best(C["square"], 8, L2)  # only the L1 norm is supported
    with pytest.raises(ValueError):
        one_sided_best(C["square"], 0, L1)
    with pytest.raises(ValueError):
        one_sided_best(C["square"], LP_MAX_DEGREE + 1, L1)
    with pytest.raises(ValueError):
        one_sided_best(C["square"], 8, L1, grid_size=4 * LP_MAX_GRID)


def test_one_sided_value_monotone_under_nested_grids():
    """Doubling a grid anchored at -pi only adds constraints, so the optimum
    can only go up; successive increments should taper."""
    vals = [one_sided_best(C["square"], 4, L1, grid_size=g).value
            for g in (128, 256, 512, 1024)]
    print("square n=4 one-sided by grid:", vals)
    assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))
    diffs = np.diff(vals)
    assert diffs[-1] < diffs[0]
    assert diffs[-1] < 2e-2


# ----------------------------------------------------------------------------
# dilation-weighted error sums
# ----------------------------------------------------------------------------


def test_besov_sum_vanishes_for_polynomial_members():
    res = besov_sum(C["sine"], 2, L2)
    assert res.converged
    assert not res.truncated
    assert res.value < 1e-9


def test_besov_sum_square_truncates_at_cap():
    """E_n(square)_1 ~ 1/n against weights 2^{nu/1}: the sum diverges, and the
    degree cap reports that honestly."""
    res = besov_sum(C["square"], 8, L1, eps=1e-6, max_degree=64)
    assert res.truncated
    assert not res.converged
    assert res.value > 0
    assert len(res.terms) >= 2
    terms = [row["term"] for row in res.terms]
    print("square besov terms:", [f"{t:.3f}" for t in terms])
    # weights 2^nu outpace E ~ 1/n: the partial terms do not decay
    assert terms[-1] > 0.8 * terms[0]
    assert_allclose(res.value, np.sum(terms), rtol=1e-12)


def test_besov_sum_converges_for_smooth_nonpolynomial():
    """E_n decays superpolynomially for an analytic target, beating 2^{nu/2}."""
    import latsamp
    f = latsamp.PointwiseFunction("esin", lambda x: np.exp(np.sin(x)),
                                  smoothness_hint=np.inf)
    res = besov_sum(f, 4, L2, eps=1e-8)
    assert res.converged
    assert not res.truncated
    assert res.value < 0.2


def test_besov_sum_rejects_weighted():
    with pytest.raises(ValueError):
        besov_sum(C["square"], 8, parse_spec("wlp:2:0.5"))


# ----------------------------------------------------------------------------
# one-sided vs derivative comparison
# ----------------------------------------------------------------------------


def test_lemder_degenerate_member():
    """sin lies in every T_n, so both sides vanish; the ratio reads 0."""
    res = lemder_check(C["sine"], 4, 1, L1)
    assert res.onesided == 0.0
    assert res.ratio == 0.0


@pytest.mark.parametrize("n", [4, 8])
def test_lemder_cusp_finite_ratio(n):
    res = lemder_check(C["cusp15"], n, 1, L1)
    assert np.isfinite(res.ratio)
    assert res.ratio > 0
    assert res.n == n and res.r == 1
    print(f"lemder cusp15 n={n}: ratio={res.ratio:.4f}")


def test_lemder_ratios_stay_bounded():
    ratios = [lemder_check(C["cusp15"], n, 1, L1).ratio for n in (4, 8, 16)]
    finite = [r for r in ratios if r > 0]
    assert finite
    assert max(finite) / min(finite) < 8.0
