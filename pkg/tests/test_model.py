"""Tests for the domain model: functions, node sets, and the panel cache."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from latsamp import (
    PointwiseFunction,
    NodeSet,
    build_cache,
    corpus,
    ensure_window_resolution,
    make_jittered_nodes,
    make_uniform_nodes,
    wrap_angle,
)

TWO_PI = 2.0 * np.pi


def test_wrap_angle_range():
    x = np.linspace(-20.0, 20.0, 1001)
    w = wrap_angle(x)
    assert np.all(w >= -np.pi)
    assert np.all(w < np.pi)
    # periodicity
    assert_allclose(np.exp(1j * w), np.exp(1j * x), atol=1e-12)


def test_wrap_angle_endpoints():
    assert wrap_angle(np.pi) == -np.pi
    assert wrap_angle(-np.pi) == -np.pi
    assert wrap_angle(0.0) == 0.0


class TestPointwiseFunction:
    def test_call_is_vectorized(self):
        f = PointwiseFunction("sq", lambda x: np.asarray(x) ** 2)
        out = f(np.array([1.0, 2.0, 3.0]))
        assert_allclose(out, [1.0, 4.0, 9.0])

    def test_derivative_chain(self):
        c = corpus()
        f = c["sine"]
        d1 = f.derivative_order(1)
        d2 = f.derivative_order(2)
        x = np.linspace(-3, 3, 17)
        assert_allclose(d1(x), np.cos(x), atol=1e-15)
        assert_allclose(d2(x), -np.sin(x), atol=1e-15)

    def test_derivative_order_zero_is_identity(self):
        f = corpus()["sine"]
        assert f.derivative_order(0) is f

    def test_missing_derivative_raises(self):
        f = PointwiseFunction("plain", np.cos)
        with pytest.raises(ValueError):
            f.derivative_order(1)


def test_uniform_nodes_basic():
    for n in (1, 4, 9):
        ns = make_uniform_nodes(n)
        assert ns.count == 2 * n + 1
        assert np.all(np.diff(ns.nodes) > 0)
        assert ns.nodes[0] >= -np.pi and ns.nodes[-1] < np.pi
        # the gaps partition the circle
        assert_allclose(ns.gaps().sum(), TWO_PI, rtol=1e-14)
        # equispaced: every gap is 2*pi/(2n+1)
        assert_allclose(ns.gaps(), TWO_PI / (2 * n + 1), rtol=1e-12)
        # mesh constants for the uniform mesh
        assert_allclose(ns.gamma, n * TWO_PI / (2 * n + 1), rtol=1e-12)
        assert_allclose(ns.gamma_prime, ns.gamma, rtol=1e-12)


def test_uniform_nodes_contain_zero():
    ns = make_uniform_nodes(6)
    assert np.min(np.abs(ns.nodes)) < 1e-15


def test_uniform_nodes_rejects_bad_n():
    with pytest.raises(ValueError):
        make_uniform_nodes(0)


def test_jittered_nodes_reproducible_and_sorted():
    a = make_jittered_nodes(8, jitter=0.4, seed=123)
    b = make_jittered_nodes(8, jitter=0.4, seed=123)
    c = make_jittered_nodes(8, jitter=0.4, seed=124)
    assert_allclose(a.nodes, b.nodes, rtol=0, atol=0)
    assert not np.allclose(a.nodes, c.nodes)
    assert np.all(np.diff(a.nodes) > 0)
    assert a.gaps().min() > 0


@pytest.mark.parametrize("jitter", [0.5, 0.7, -0.1])
def test_jitter_fraction_validated(jitter):
    with pytest.raises(ValueError):
        make_jittered_nodes(8, jitter=jitter, seed=0)


def test_nodeset_rejects_unsorted():
    with pytest.raises(ValueError):
        NodeSet(nodes=np.array([0.0, -1.0, 1.0]), n=1, gamma=1.0, gamma_prime=1.0)
    with pytest.raises(ValueError):
        NodeSet(nodes=np.array([-4.0, 0.0, 1.0]), n=1, gamma=1.0, gamma_prime=1.0)


# ----------------------------------------------------------------------------
# DenseGridCache
# ----------------------------------------------------------------------------


def test_cache_total_integral():
    one = PointwiseFunction("one", lambda x: np.ones_like(np.asarray(x, float)))
    cache = build_cache(one, resolution=64)
    assert_allclose(complex(cache.total).real, TWO_PI, rtol=1e-13)

    sine_cache = build_cache(corpus()["sine"], resolution=128)
    assert abs(complex(sine_cache.total)) < 1e-12


def test_cache_values_at_matches_function():
    f = corpus()["smooth"]
    cache = build_cache(f, resolution=256)
    rng = np.random.default_rng(7)
    x = rng.uniform(-np.pi, np.pi, 200)
    assert_allclose(cache.values_at(x).real, f(x), atol=1e-9)


def test_antiderivative_of_cos():
    f = PointwiseFunction("cos", np.cos)
    cache = build_cache(f, resolution=256)
    x = np.linspace(-np.pi, np.pi - 1e-9, 41)
    want = np.sin(x) - np.sin(cache.edges[0])
    got = np.asarray(cache.antiderivative(x)).real
    assert_allclose(got, want, atol=1e-12)


def test_antiderivative_wraps_periodically():
    """F(x + 2pi) - F(x) should equal the full-period integral."""
    f = PointwiseFunction("shifted", lambda x: 2.0 + np.sin(x))
    cache = build_cache(f, resolution=128)
    x = np.array([-1.0, 0.3, 2.0])
    jump = np.asarray(cache.antiderivative(x + TWO_PI)) - np.asarray(cache.antiderivative(x))
    assert_allclose(jump.real, 2.0 * TWO_PI, rtol=1e-13)


def test_breakpoint_panels_present():
    sq = corpus()["square"]
    cache = build_cache(sq, resolution=64)
    # both declared breakpoints must appear among the panel edges
    for b in sq.breakpoints:
        assert np.min(np.abs(cache.edges - b)) < 1e-12


def test_graded_panels_shrink_near_breakpoints():
    cache = build_cache(corpus()["square"], resolution=64)
    j = int(np.argmin(np.abs(cache.edges - 0.0)))
    near = cache.widths[j]
    assert near < 1e-8  # graded subdivision hugs the jump
    assert cache.widths.max() > 1e-2


def test_ensure_window_resolution():
    f = corpus()["sine"]
    cache = build_cache(f, resolution=32)
    fine = ensure_window_resolution(cache, h=1e-3)
    assert fine.panel_count > cache.panel_count
    # already fine enough: same object comes back
    again = ensure_window_resolution(fine, h=np.pi / 3)
    assert again is fine


def test_cache_integrate_square():
    sq = corpus()["square"]
    cache = build_cache(sq, resolution=128)
    # integral of the square wave over a period is 0; of its square is 2*pi
    assert abs(complex(cache.total)) < 1e-10
    sq2 = complex(cache.integrate_values(np.abs(cache.gl_values) ** 2)).real
    assert_allclose(sq2, TWO_PI, rtol=1e-10)


# ----------------------------------------------------------------------------
# corpus
# ----------------------------------------------------------------------------


EXPECTED_LABELS = {"exp1", "exp3", "exp7", "smooth", "sine", "square",
                   "cusp05", "cusp15", "sawtooth"}


def test_corpus_labels():
    c = corpus()
    assert EXPECTED_LABELS <= set(c.keys())
    for label, f in c.items():
        assert f.label == label


def test_square_jump_values():
    sq = corpus()["square"]
    assert sq(np.array([0.0]))[0] == 0.0
    assert sq(np.array([np.pi]))[0] == 0.0
    assert sq(np.array([0.5]))[0] == 1.0
    assert sq(np.array([-0.5]))[0] == -1.0
    assert set(sq.breakpoints) == {-np.pi, 0.0}


def test_sawtooth_values():
    saw = corpus()["sawtooth"]
    x = np.array([0.5, 3.0, -2.0])
    want = 0.5 * (np.mod(x, TWO_PI) - np.pi)
    assert_allclose(saw(x), want, atol=1e-15)
    assert saw(np.array([0.0]))[0] == 0.0


def test_exp_functions_and_derivatives():
    c = corpus()
    x = np.linspace(-np.pi, np.pi, 33)
    for k in (1, 3, 7):
        f = c[f"exp{k}"]
        assert_allclose(f(x), np.exp(1j * k * x), atol=1e-15)
        assert_allclose(f.derivative_order(1)(x), 1j * k * np.exp(1j * k * x), atol=1e-14)


def test_cusp_powers():
    c = corpus()
    x = np.linspace(-np.pi, np.pi, 101)
    assert_allclose(c["cusp05"](x), np.abs(np.sin(x)) ** 0.5, atol=1e-15)
    assert_allclose(c["cusp15"](x), np.abs(np.sin(x)) ** 1.5, atol=1e-15)
