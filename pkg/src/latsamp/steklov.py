"""Window (moving) averages and their iterates.

``A_h`` is the centered average over ``[x - h/2, x + h/2]``; the shifted
variant ``A_h^. = A_h f(x + h/2)`` averages over ``[x, x + h]``.  On spectra
both act diagonally: ``exp(ikx)`` picks up ``sin(kh/2)/(kh/2)``, times the
phase ``exp(ikh/2)`` for the shifted variant.

Two backends:

* TrigPoly -> exact coefficient multipliers;
* DenseGridCache -> antiderivative differences ``(F(x+h/2) - F(x-h/2))/h``.
  The first application of a base cache uses the exact evaluator for partial
  panels; iterated averages materialize one derived cache per level (cost
  linear in the iteration count r, supported for r <= 4).
"""

from __future__ import annotations

from math import comb
from typing import Union

import numpy as np

from .model import DenseGridCache, PointwiseFunction, build_cache, ensure_window_resolution
from .trigpoly import TrigPoly

MAX_ITERATES = 4

Averageable = Union[TrigPoly, DenseGridCache, PointwiseFunction]


def _check_h(h: float):
    if not 0.0 < h <= 2.0 * np.pi:
        raise ValueError("window width h must lie in (0, 2*pi]")


def multiplier(h: float, ks, centered: bool = True) -> np.ndarray:
    """Spectral factor of the window average at integer frequencies ``ks``."""
    ks = np.asarray(ks)
    m = np.sinc(ks * h / (2.0 * np.pi))
    if not centered:
        m = m * np.exp(0.5j * ks * h)
    return m


def steklov_values(cache: DenseGridCache, h: float, points, centered: bool = True) -> np.ndarray:
    """Window average of a cached function at arbitrary points."""
    _check_h(h)
    x = np.asarray(points, dtype=float)
    if centered:
        lo, hi = x - 0.5 * h, x + 0.5 * h
    else:
        lo, hi = x, x + h
    return (cache.antiderivative(hi) - cache.antiderivative(lo)) / h


def _steklov_cache(cache: DenseGridCache, h: float, centered: bool) -> DenseGridCache:
    edge_vals = steklov_values(cache, h, cache.edges, centered)
    gl_vals = steklov_values(cache, h, cache.gl_points().ravel(), centered)
    return cache.spawn(edge_vals, gl_vals.reshape(cache.gl_values.shape))


def steklov(obj: Averageable, h: float, centered: bool = True) -> Averageable:
    """Apply the window average once; the result has the input's type.

    Base caches are refined first if the window would span fewer than 64
    uniform grid steps.
    """
    _check_h(h)
    if isinstance(obj, TrigPoly):
        return TrigPoly(obj.coeffs * multiplier(h, obj.freqs, centered))
    if isinstance(obj, PointwiseFunction):
        obj = build_cache(obj)
    if obj.fn is not None:
        obj = ensure_window_resolution(obj, h)
    return _steklov_cache(obj, h, centered)


def steklov_chain(cache: DenseGridCache, h: float, r: int, centered: bool = True):
    """``[f, A_h f, A_h^2 f, ..., A_h^r f]`` as materialized caches."""
    _check_h(h)
    if not 1 <= r <= MAX_ITERATES:
        raise ValueError(f"iteration count must lie in 1..{MAX_ITERATES}")
    if cache.fn is not None:
        cache = ensure_window_resolution(cache, h)
    chain = [cache]
    for _ in range(r):
        chain.append(_steklov_cache(chain[-1], h, centered))
    return chain


def i_minus_a_pow(obj: Averageable, h: float, r: int, centered: bool = True) -> Averageable:
    """``(I - A_h)^r f`` via the binomial expansion over iterated averages."""
    _check_h(h)
    if not 1 <= r <= MAX_ITERATES:
        raise ValueError(f"power must lie in 1..{MAX_ITERATES}")
    if isinstance(obj, TrigPoly):
        m = multiplier(h, obj.freqs, centered)
        weights = np.zeros_like(m)
        for k in range(r + 1):
            weights = weights + ((-1.0) ** k) * comb(r, k) * m ** k
        return TrigPoly(obj.coeffs * weights)
    if isinstance(obj, PointwiseFunction):
        obj = build_cache(obj)
    chain = steklov_chain(obj, h, r, centered)
    edge = np.zeros_like(chain[0].edge_values, dtype=complex)
    gl = np.zeros_like(chain[0].gl_values, dtype=complex)
    for k in range(r + 1):
        c = ((-1.0) ** k) * comb(r, k)
        edge = edge + c * chain[k].edge_values
        gl = gl + c * chain[k].gl_values
    return chain[0].spawn(edge, gl)


def i_minus_a_pow_at(cache: DenseGridCache, h: float, r: int, points,
                     centered: bool = True) -> np.ndarray:
    """``(I - A_h)^r f`` evaluated at arbitrary points.

    The zeroth term uses the exact evaluator when the cache has one, so node
    samples honor declared jump values.
    """
    _check_h(h)
    if not 1 <= r <= MAX_ITERATES:
        raise ValueError(f"power must lie in 1..{MAX_ITERATES}")
    if cache.fn is not None:
        cache = ensure_window_resolution(cache, h)
    pts = np.asarray(points, dtype=float)
    out = cache.values_at(pts).astype(complex)
    level = cache
    for k in range(1, r + 1):
        vals = steklov_values(level, h, pts, centered)
        out = out + ((-1.0) ** k) * comb(r, k) * vals
        if k < r:
            level = _steklov_cache(level, h, centered)
    return out


def smoothed(obj: Averageable, h: float, r: int, centered: bool = True) -> Averageable:
    """``g_h = f - (I - A_h)^r f``, the polynomial-reproducing smoothing step.

    Equals ``sum_{k=1}^{r} (-1)^{k+1} C(r,k) A_h^k f``.
    """
    _check_h(h)
    if isinstance(obj, TrigPoly):
        return obj - i_minus_a_pow(obj, h, r, centered)
    if isinstance(obj, PointwiseFunction):
        obj = build_cache(obj)
    chain = steklov_chain(obj, h, r, centered)
    edge = np.zeros_like(chain[0].edge_values, dtype=complex)
    gl = np.zeros_like(chain[0].gl_values, dtype=complex)
    for k in range(1, r + 1):
        c = ((-1.0) ** (k + 1)) * comb(r, k)
        edge = edge + c * chain[k].edge_values
        gl = gl + c * chain[k].gl_values
    return chain[0].spawn(edge, gl)
