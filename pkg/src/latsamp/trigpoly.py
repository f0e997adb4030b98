"""Trigonometric polynomials, Fourier analysis of samples, and window profiles.

A :class:`TrigPoly` stores coefficients ``c_k`` for ``k = -n..n`` and evaluates
``T(x) = sum c_k exp(ikx)``.  Sample analysis on the 2n+1 equispaced points
``t_j = 2*pi*j/(2n+1)`` is an exact bijection onto polynomials of degree n (an
FFT of odd length); higher frequencies alias down by ``k mod (2n+1)``.

Window profiles ``phi`` live on ``[-1, 1]`` and act on coefficients as
``c_k -> phi(k/n) c_k``; their kernels ``sum phi(k/n) exp(ikx)`` are evaluated
by direct summation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from .model import DenseGridCache, PointwiseFunction, build_cache

MAX_DEGREE = 4096

_EVAL_CHUNK = 8192


@dataclass
class TrigPoly:
    """Coefficients ``c_k``, ``k = -degree..degree`` (odd length array)."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size % 2 != 1:
            raise ValueError("coefficient array must be 1-d of odd length")
        if c.size > 2 * MAX_DEGREE + 1:
            raise ValueError(f"degree exceeds cap {MAX_DEGREE}")
        self.coeffs = c

    @property
    def degree(self) -> int:
        return (self.coeffs.size - 1) // 2

    @property
    def freqs(self) -> np.ndarray:
        n = self.degree
        return np.arange(-n, n + 1)

    def coeff(self, k: int) -> complex:
        n = self.degree
        if abs(k) > n:
            return 0.0 + 0.0j
        return self.coeffs[k + n]

    # -- evaluation ----------------------------------------------------------

    def at(self, x) -> np.ndarray:
        """Evaluate at arbitrary points (chunked basis matmul)."""
        x = np.asarray(x, dtype=float)
        shape = x.shape
        xf = np.atleast_1d(x).ravel()
        ks = self.freqs
        out = np.empty(xf.size, dtype=complex)
        for lo in range(0, xf.size, _EVAL_CHUNK):
            xc = xf[lo:lo + _EVAL_CHUNK]
            out[lo:lo + _EVAL_CHUNK] = np.exp(1j * xc[:, None] * ks[None, :]) @ self.coeffs
        return out.reshape(shape)

    def on_uniform_grid(self, m: int, start: float = -np.pi) -> np.ndarray:
        """Values at ``start + 2*pi*j/m`` for ``j = 0..m-1`` via zero-padded FFT."""
        n = self.degree
        if m < 2 * n + 1:
            raise ValueError("grid must oversample the degree")
        d = np.zeros(m, dtype=complex)
        ks = self.freqs
        np.add.at(d, np.mod(ks, m), self.coeffs * np.exp(1j * ks * start))
        return np.fft.ifft(d) * m

    def sample_uniform(self, n_nodes: int) -> np.ndarray:
        """Values at ``t_j = 2*pi*j/n_nodes`` (FFT when the grid resolves us)."""
        if n_nodes >= 2 * self.degree + 1:
            return self.on_uniform_grid(n_nodes, start=0.0)
        return self.at(2 * np.pi * np.arange(n_nodes) / n_nodes)

    # -- calculus ------------------------------------------------------------

    def derivative(self, order: int = 1) -> "TrigPoly":
        ks = self.freqs
        return TrigPoly(self.coeffs * (1j * ks) ** int(order))

    def as_pointwise(self, label: Optional[str] = None) -> PointwiseFunction:
        return PointwiseFunction(
            label=label or f"trigpoly{self.degree}",
            evaluator=self.at,
            smoothness_hint=np.inf,
        )

    # -- arithmetic ----------------------------------------------------------

    def _aligned(self, other: "TrigPoly"):
        n = max(self.degree, other.degree)
        a = np.zeros(2 * n + 1, dtype=complex)
        b = np.zeros(2 * n + 1, dtype=complex)
        a[n - self.degree: n + self.degree + 1] = self.coeffs
        b[n - other.degree: n + other.degree + 1] = other.coeffs
        return a, b

    def __add__(self, other):
        a, b = self._aligned(other)
        return TrigPoly(a + b)

    def __sub__(self, other):
        a, b = self._aligned(other)
        return TrigPoly(a - b)

    def __mul__(self, scalar):
        return TrigPoly(self.coeffs * scalar)

    __rmul__ = __mul__

    def truncate(self, m: int) -> "TrigPoly":
        """Drop coefficients with ``|k| > m``."""
        n = self.degree
        if m >= n:
            return TrigPoly(self.coeffs.copy())
        return TrigPoly(self.coeffs[n - m: n + m + 1])


def zero_poly(n: int = 0) -> TrigPoly:
    return TrigPoly(np.zeros(2 * n + 1, dtype=complex))


def analyze(values) -> TrigPoly:
    """Exact Fourier analysis of samples on the 2n+1 equispaced points.

    ``values[j] = f(2*pi*j/(2n+1))``.  The returned degree-n polynomial
    interpolates the samples; frequencies above n alias down modulo 2n+1.
    """
    values = np.asarray(values, dtype=complex)
    if values.ndim != 1 or values.size % 2 != 1:
        raise ValueError("need an odd number of equispaced samples")
    m = values.size
    n = (m - 1) // 2
    if n > MAX_DEGREE:
        raise ValueError(f"degree exceeds cap {MAX_DEGREE}")
    c = np.fft.fft(values) / m
    return TrigPoly(np.concatenate([c[n + 1:], c[: n + 1]]))


# ----------------------------------------------------------------------------
# Window profiles
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Window:
    """An even profile ``phi`` on [-1, 1] acting multiplicatively on spectra."""

    name: str
    profile: Callable = field(compare=False, repr=False)

    def __call__(self, xi) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        inside = np.abs(xi) <= 1.0
        vals = np.where(inside, self.profile(np.where(inside, xi, 0.0)), 0.0)
        return vals


def dirichlet_window() -> Window:
    return Window("dirichlet", lambda xi: np.ones_like(xi))


def fejer_window() -> Window:
    return Window("fejer", lambda xi: 1.0 - np.abs(xi))


def br_window(alpha: float) -> Window:
    if alpha <= 0:
        raise ValueError("smoothing exponent must be positive")
    return Window(f"br:{alpha:g}", lambda xi: (1.0 - xi * xi) ** alpha)


def table_window(grid, values, name: str = "table") -> Window:
    """Window from tabulated values on a grid spanning [-1, 1] (linear interp)."""
    grid = np.asarray(grid, dtype=float)
    values = np.asarray(values, dtype=float)
    if grid[0] != -1.0 or grid[-1] != 1.0:
        raise ValueError("table must span [-1, 1]")
    return Window(name, lambda xi: np.interp(xi, grid, values))


def apply_window(poly: TrigPoly, window: Window, n: int) -> TrigPoly:
    """Multiply coefficients by ``phi(k/n)``."""
    if n < 1:
        raise ValueError("window scale n must be >= 1")
    return TrigPoly(poly.coeffs * window(poly.freqs / n))


def kernel_eval(window: Window, n: int, x) -> np.ndarray:
    """Kernel values ``sum_{|k|<=n} phi(k/n) exp(ikx)`` by direct summation."""
    ks = np.arange(-n, n + 1)
    weights = window(ks / n)
    x = np.asarray(x, dtype=float)
    shape = x.shape
    xf = np.atleast_1d(x).ravel()
    out = np.empty(xf.size, dtype=complex)
    for lo in range(0, xf.size, _EVAL_CHUNK):
        xc = xf[lo:lo + _EVAL_CHUNK]
        out[lo:lo + _EVAL_CHUNK] = np.exp(1j * xc[:, None] * ks[None, :]) @ weights.astype(complex)
    return out.reshape(shape)


# ----------------------------------------------------------------------------
# Fourier coefficients by quadrature, partial sums, de la Vallee Poussin means
# ----------------------------------------------------------------------------

Sourceable = Union[TrigPoly, DenseGridCache, PointwiseFunction]


def _as_cache(source: Sourceable, n_scale: int) -> DenseGridCache:
    if isinstance(source, DenseGridCache):
        return source
    if isinstance(source, TrigPoly):
        return build_cache(source.as_pointwise(), n_scale=max(n_scale, source.degree))
    return build_cache(source, n_scale=n_scale)


def fourier_coefficients(source: Sourceable, kmax: int, oversample: int = 8) -> np.ndarray:
    """``(1/2pi) int f(x) exp(-ikx) dx`` for ``k = -kmax..kmax``.

    For caches the integral runs over the stored Gauss-Legendre panels, so
    declared jumps and cusps do not degrade accuracy.  The cache must resolve
    the requested band: resolution >= ``oversample * kmax``.
    """
    if isinstance(source, TrigPoly):
        n = source.degree
        out = np.zeros(2 * kmax + 1, dtype=complex)
        lo = max(-kmax, -n)
        out[lo + kmax: min(kmax, n) + kmax + 1] = source.coeffs[lo + n: min(kmax, n) + n + 1]
        return out
    cache = _as_cache(source, kmax)
    if kmax > 0 and cache.resolution < oversample * kmax:
        raise ValueError(
            f"cache resolution {cache.resolution} too coarse for |k| <= {kmax} "
            f"(need >= {oversample * kmax})")
    gx = cache.gl_points().ravel()
    gw = cache.gl_weights().ravel()
    gv = cache.gl_values.ravel() * gw
    ks = np.arange(-kmax, kmax + 1)
    out = np.empty(ks.size, dtype=complex)
    for lo in range(0, ks.size, 512):
        kc = ks[lo:lo + 512]
        acc = np.zeros(kc.size, dtype=complex)
        for plo in range(0, gx.size, 16384):
            sl = slice(plo, plo + 16384)
            acc += np.exp(-1j * np.outer(kc, gx[sl])) @ gv[sl]
        out[lo:lo + 512] = acc
    return out / (2.0 * np.pi)


def partial_sum(source: Sourceable, m: int) -> TrigPoly:
    """Fourier partial sum ``S_m f`` as a degree-m polynomial."""
    if m < 0:
        raise ValueError("partial sum order must be >= 0")
    if isinstance(source, TrigPoly):
        return source.truncate(m)
    return TrigPoly(fourier_coefficients(source, m, oversample=8))


def subtract_poly(cache: DenseGridCache, poly: TrigPoly) -> DenseGridCache:
    """Residual ``f - T`` as a derived cache on f's partition."""
    edge = cache.edge_values - poly.at(cache.edges)
    gl = cache.gl_values - poly.at(cache.gl_points().ravel()).reshape(cache.gl_values.shape)
    return cache.spawn(edge, gl)


def vp_mean(source: Sourceable, n: int) -> TrigPoly:
    """De la Vallee Poussin mean ``(n+1)^{-1} sum_{m=n}^{2n} S_m f`` (degree 2n).

    Acts on coefficients as a piecewise-linear taper: factor 1 for ``|k| <= n``
    and ``(2n+1-|k|)/(n+1)`` for ``n < |k| <= 2n``; reproduces every polynomial
    of degree <= n.
    """
    if n < 1:
        raise ValueError("vp order must be >= 1")
    coeffs = fourier_coefficients(source, 2 * n, oversample=16) \
        if not isinstance(source, TrigPoly) else fourier_coefficients(source, 2 * n)
    ks = np.arange(-2 * n, 2 * n + 1)
    taper = np.minimum(1.0, (2 * n + 1 - np.abs(ks)) / (n + 1))
    return TrigPoly(coeffs * taper)
