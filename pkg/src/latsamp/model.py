"""Pointwise function model, node sets, and dense quadrature caches on the circle.

Everything downstream (norms, window averages, sampling operators) consumes the
three types defined here:

* :class:`PointwiseFunction` -- an exact vectorized evaluator with declared
  breakpoints and jump values, so sampling at a discontinuity is well defined.
* :class:`NodeSet` -- sampling nodes on ``[-pi, pi)`` with mesh constants.
* :class:`DenseGridCache` -- a breakpoint-aware composite Gauss-Legendre panel
  partition carrying function values and an antiderivative (prefix) table.

The cache is the single quadrature surface of the package: panel integrals are
5-point Gauss-Legendre, panels are split at declared breakpoints and graded
geometrically toward them (and toward ``x = 0``, where the weighted norms are
singular), so piecewise and cusped integrands integrate to near machine
accuracy without adaptive quadrature.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

TWO_PI = 2.0 * np.pi

# Reference 5-point Gauss-Legendre rule on [-1, 1].
GL_NODES, GL_WEIGHTS = np.polynomial.legendre.leggauss(5)

# Monomial coefficient matrix of the Lagrange basis on GL_NODES:
# values v at the nodes -> monomial coefficients a = _GL_VANDER_INV @ v,
# i.e. p(t) = sum_m a[m] t^m interpolates (GL_NODES, v).
_GL_VANDER_INV = np.linalg.inv(np.vander(GL_NODES, 5, increasing=True))

#: Default number of uniform base panels for a cache.
DEFAULT_RESOLUTION = 4096

#: Oversampling factor tying cache resolution to the largest frequency scale.
OVERSAMPLE = 64

#: A window average must span at least this many uniform grid steps.
MIN_PANELS_PER_WINDOW = 64


def wrap_angle(x):
    """Map angles to the canonical period ``[-pi, pi)``."""
    x = np.asarray(x, dtype=float)
    return np.mod(x + np.pi, TWO_PI) - np.pi


@dataclass(frozen=True)
class PointwiseFunction:
    """A function given by an exact vectorized evaluator.

    Parameters
    ----------
    label : str
        Short identifier used in reports.
    evaluator : callable
        Vectorized map ``x -> values`` (real or complex).  At declared
        breakpoints it must return the declared jump value, so pointwise
        sampling is unambiguous.
    domain : str
        ``"circle"`` (2pi-periodic) or ``"line"``.
    breakpoints : tuple of float
        Locations in ``[-pi, pi)`` where the function (or a derivative) is not
        smooth.  Quadrature panels are split and graded there.
    smoothness_hint : float or None
        Expected approximation order, when known (used only for reporting).
    derivative : PointwiseFunction or None
        Exact derivative, when available.
    decay : (C, q) or None
        For line-domain signals: a certified bound ``|f(t)| <= C/|t|^q`` for
        ``|t| >= 1``, used by truncated sampling sums to bound their tails.
    """

    label: str
    evaluator: Callable = field(compare=False, repr=False)
    domain: str = "circle"
    breakpoints: tuple = ()
    smoothness_hint: Optional[float] = None
    derivative: Optional["PointwiseFunction"] = field(default=None, repr=False)
    decay: Optional[tuple] = None

    def __call__(self, x):
        vals = self.evaluator(np.asarray(x, dtype=float))
        return np.asarray(vals)

    def derivative_order(self, r: int) -> "PointwiseFunction":
        """Return the r-th derivative, chaining :attr:`derivative` r times."""
        f = self
        for _ in range(int(r)):
            if f.derivative is None:
                raise ValueError(f"{f.label}: no exact derivative available")
            f = f.derivative
        return f


@dataclass(frozen=True)
class NodeSet:
    """Sampling nodes on ``[-pi, pi)`` with mesh constants.

    ``gamma`` and ``gamma_prime`` are ``n * (smallest gap)`` and
    ``n * (largest gap)``; gaps include the wraparound cell, so a NodeSet is
    genuinely a partition of the circle.
    """

    nodes: np.ndarray
    n: int
    gamma: float
    gamma_prime: float

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        if nodes.ndim != 1 or nodes.size < 2:
            raise ValueError("need at least two nodes")
        if np.any(np.diff(nodes) <= 0):
            raise ValueError("nodes must be strictly increasing")
        if nodes[0] < -np.pi or nodes[-1] >= np.pi:
            raise ValueError("nodes must lie in [-pi, pi)")
        object.__setattr__(self, "nodes", nodes)

    @property
    def count(self) -> int:
        return self.nodes.size

    def gaps(self) -> np.ndarray:
        """Cell widths [x_k, x_{k+1}), including the wraparound cell."""
        d = np.diff(self.nodes)
        wrap = self.nodes[0] + TWO_PI - self.nodes[-1]
        return np.concatenate([d, [wrap]])


def _nodeset_from_sorted(nodes: np.ndarray, n: int) -> NodeSet:
    d = np.diff(nodes)
    wrap = nodes[0] + TWO_PI - nodes[-1]
    gaps = np.concatenate([d, [wrap]])
    return NodeSet(nodes=nodes, n=n, gamma=n * gaps.min(), gamma_prime=n * gaps.max())


def make_uniform_nodes(n: int) -> NodeSet:
    """2n+1 equispaced nodes ``2*pi*k/(2n+1)``, wrapped and sorted."""
    if n < 1:
        raise ValueError("n must be >= 1")
    k = np.arange(2 * n + 1)
    nodes = np.sort(wrap_angle(TWO_PI * k / (2 * n + 1)))
    return _nodeset_from_sorted(nodes, n)


def make_jittered_nodes(n: int, jitter: float, seed) -> NodeSet:
    """Uniform nodes perturbed by ``U(-jitter, jitter)`` times the mesh width.

    ``jitter`` must stay below 0.5 so the node ordering survives; values in
    [0, 0.4) keep comfortably away from degenerate gaps.
    """
    if not 0.0 <= jitter < 0.5:
        raise ValueError("jitter fraction must lie in [0, 0.5)")
    base = make_uniform_nodes(n)
    mesh = TWO_PI / (2 * n + 1)
    rng = np.random.default_rng(np.random.SeedSequence([int(seed), 2 * n + 1]))
    shifts = rng.uniform(-jitter, jitter, size=base.count) * mesh
    nodes = np.sort(wrap_angle(base.nodes + shifts))
    return _nodeset_from_sorted(nodes, n)


# ----------------------------------------------------------------------------
# Panel partitions and caches
# ----------------------------------------------------------------------------

GRADE_PER_DECADE = 40
GRADE_FLOOR = 1e-10


def _graded_offsets(step: float) -> np.ndarray:
    """Geometric ladder of offsets from GRADE_FLOOR up to ``step``."""
    if step <= GRADE_FLOOR:
        return np.empty(0)
    num = int(np.ceil(GRADE_PER_DECADE * np.log10(step / GRADE_FLOOR)))
    return np.geomspace(GRADE_FLOOR, step, num=max(num, 2))


def _panel_edges(resolution: int, breakpoints) -> np.ndarray:
    """Uniform edges split at breakpoints and graded toward them and 0."""
    edges = np.linspace(-np.pi, np.pi, resolution + 1)
    step = TWO_PI / resolution
    special = set(float(b) for b in breakpoints)
    special.add(0.0)
    extra = []
    for b in sorted(special):
        offs = _graded_offsets(2 * step)
        extra.append(b + offs)
        extra.append(b - offs)
        extra.append(np.array([b]))
        if np.isclose(b, -np.pi):
            # the same corner seen from the right end of the period
            extra.append(np.pi - offs)
    if extra:
        edges = np.concatenate([edges] + extra)
    edges = edges[(edges >= -np.pi) & (edges <= np.pi)]
    edges = np.unique(edges)
    # drop panels thinner than floating noise
    keep = np.concatenate([[True], np.diff(edges) > 1e-13])
    edges = edges[keep]
    edges[0], edges[-1] = -np.pi, np.pi
    return edges


@dataclass
class DenseGridCache:
    """Function values and antiderivative on a breakpoint-aware panel partition.

    Attributes
    ----------
    fn : PointwiseFunction or None
        The exact evaluator when the cache is a base cache.  Derived caches
        (e.g. iterated window averages) have ``fn = None`` and fall back to the
        stored in-panel interpolant for partial-panel integrals.
    edges : (M+1,) float
        Panel edges, ``edges[0] = -pi``, ``edges[-1] = pi``.
    edge_values : (M+1,) complex
        Function values at the edges (pointwise convention at breakpoints).
    gl_values : (M, 5) complex
        Values at the per-panel Gauss-Legendre nodes.
    prefix : (M+1,) complex
        ``prefix[j] = int_{-pi}^{edges[j]} f``.
    resolution : int
        The uniform base resolution used to build the partition.
    """

    fn: Optional[PointwiseFunction]
    resolution: int
    edges: np.ndarray
    edge_values: np.ndarray
    gl_values: np.ndarray
    prefix: np.ndarray
    breakpoints: tuple = ()

    # -- construction helpers ------------------------------------------------

    @property
    def panel_count(self) -> int:
        return self.edges.size - 1

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    def gl_points(self) -> np.ndarray:
        """(M, 5) abscissae of the panel Gauss-Legendre nodes."""
        a = self.edges[:-1, None]
        w = self.widths[:, None]
        return a + 0.5 * w * (GL_NODES[None, :] + 1.0)

    def gl_weights(self) -> np.ndarray:
        return 0.5 * self.widths[:, None] * GL_WEIGHTS[None, :]

    @property
    def total(self) -> complex:
        """Integral over the full period."""
        return self.prefix[-1]

    def integrate_values(self, gl_vals: np.ndarray) -> complex:
        """Integrate a pointwise transform given at the panel GL nodes."""
        return np.sum(self.gl_weights() * gl_vals)

    # -- antiderivative ------------------------------------------------------

    def antiderivative(self, y) -> np.ndarray:
        """F(y) = int_{-pi}^{y} f, extended by F(y + 2pi) = F(y) + F(pi)."""
        y = np.asarray(y, dtype=float)
        shape = y.shape
        y = np.atleast_1d(y).ravel()
        winding = np.floor((y + np.pi) / TWO_PI)
        yw = y - winding * TWO_PI
        # guard the right endpoint: y exactly pi wraps to -pi with winding 1
        j = np.searchsorted(self.edges, yw, side="right") - 1
        j = np.clip(j, 0, self.panel_count - 1)
        a = self.edges[j]
        width = self.edges[j + 1] - a
        t = 2.0 * (yw - a) / width - 1.0
        partial = self._partial_panel(j, a, yw, width, t)
        out = self.prefix[j] + partial + winding * self.total
        return out.reshape(shape)

    def _partial_panel(self, j, a, y, width, t):
        if self.fn is not None:
            # exact evaluator: 5-point Gauss-Legendre on [a, y]
            half = 0.5 * (y - a)
            nodes = a[:, None] + half[:, None] * (GL_NODES[None, :] + 1.0)
            vals = self.fn(nodes.ravel()).reshape(nodes.shape)
            return half * (vals @ GL_WEIGHTS)
        # derived cache: integrate the in-panel degree-4 interpolant
        coeffs = self.gl_values[j] @ _GL_VANDER_INV.T  # (K, 5) monomial coeffs
        powers = np.arange(1, 6)
        tt = t[:, None] ** powers[None, :]
        lo = (-1.0) ** powers
        integ = np.sum(coeffs * (tt - lo[None, :]) / powers[None, :], axis=1)
        return 0.5 * width * integ

    # -- values --------------------------------------------------------------

    def values_at(self, x) -> np.ndarray:
        """Evaluate the cached function at arbitrary points.

        Uses the exact evaluator when available, otherwise the stored
        in-panel interpolant.
        """
        if self.fn is not None:
            return self.fn(x)
        x = np.asarray(x, dtype=float)
        shape = x.shape
        xw = wrap_angle(np.atleast_1d(x).ravel())
        j = np.searchsorted(self.edges, xw, side="right") - 1
        j = np.clip(j, 0, self.panel_count - 1)
        a = self.edges[j]
        width = self.edges[j + 1] - a
        t = 2.0 * (xw - a) / width - 1.0
        coeffs = self.gl_values[j] @ _GL_VANDER_INV.T
        vals = np.sum(coeffs * t[:, None] ** np.arange(5)[None, :], axis=1)
        return vals.reshape(shape)

    def spawn(self, edge_values, gl_values) -> "DenseGridCache":
        """Derived cache on the same partition from new pointwise values."""
        panel_int = np.sum(self.gl_weights() * gl_values, axis=1)
        prefix = np.concatenate([[0.0], np.cumsum(panel_int)])
        return DenseGridCache(
            fn=None,
            resolution=self.resolution,
            edges=self.edges,
            edge_values=np.asarray(edge_values),
            gl_values=np.asarray(gl_values),
            prefix=prefix,
            breakpoints=self.breakpoints,
        )


def build_cache(fn: PointwiseFunction, resolution: Optional[int] = None,
                n_scale: Optional[int] = None) -> DenseGridCache:
    """Build a :class:`DenseGridCache` for ``fn``.

    ``resolution`` is the uniform base panel count; when omitted it defaults to
    ``max(4096, 64*n_scale)`` so frequencies up to ``n_scale`` are oversampled
    by a factor >= 64.
    """
    if fn.domain != "circle":
        raise ValueError("caches are built for circle-domain functions")
    if resolution is None:
        resolution = DEFAULT_RESOLUTION
        if n_scale is not None:
            resolution = max(resolution, OVERSAMPLE * int(n_scale))
    edges = _panel_edges(resolution, fn.breakpoints)
    widths = np.diff(edges)
    gl_x = edges[:-1, None] + 0.5 * widths[:, None] * (GL_NODES[None, :] + 1.0)
    gl_values = fn(gl_x.ravel()).reshape(gl_x.shape)
    edge_values = fn(edges)
    panel_int = np.sum(0.5 * widths[:, None] * GL_WEIGHTS[None, :] * gl_values, axis=1)
    prefix = np.concatenate([[0.0], np.cumsum(panel_int)])
    return DenseGridCache(
        fn=fn,
        resolution=resolution,
        edges=edges,
        edge_values=edge_values,
        gl_values=gl_values,
        prefix=prefix,
        breakpoints=tuple(fn.breakpoints),
    )


def ensure_window_resolution(cache: DenseGridCache, h: float) -> DenseGridCache:
    """Refine a base cache until the window ``h`` spans >= 64 uniform steps."""
    needed = int(np.ceil(MIN_PANELS_PER_WINDOW * TWO_PI / h))
    if cache.resolution >= needed:
        return cache
    if cache.fn is None:
        raise ValueError("cannot refine a derived cache; rebuild the base cache")
    resolution = 1 << int(np.ceil(np.log2(needed)))
    return build_cache(cache.fn, resolution=resolution)


# ----------------------------------------------------------------------------
# Reference corpus
# ----------------------------------------------------------------------------


def _square_eval(x):
    w = np.mod(np.asarray(x, dtype=float), TWO_PI)
    out = np.where(w < np.pi, 1.0, -1.0)
    return np.where((w == 0.0) | (w == np.pi), 0.0, out)


def _sawtooth_eval(x):
    w = np.mod(np.asarray(x, dtype=float), TWO_PI)
    return np.where(w == 0.0, 0.0, 0.5 * (w - np.pi))


def _abs_sin_pow(alpha):
    def ev(x):
        return np.abs(np.sin(x)) ** alpha
    return ev


def _cusp15_derivative(x):
    s = np.sin(x)
    return 1.5 * np.abs(s) ** 0.5 * np.sign(s) * np.cos(x)


def corpus() -> dict:
    """The reference function corpus keyed by label.

    Includes complex exponentials, a finite trigonometric sum, a square wave
    (jump value 0 at the jumps), two cusp powers of ``|sin|``, a sawtooth, and
    a plain sine (handy where an exact derivative is needed).
    """
    entries = {}
    for k in (1, 3, 7):
        dk = PointwiseFunction(
            label=f"dexp{k}",
            evaluator=(lambda kk: (lambda x: 1j * kk * np.exp(1j * kk * x)))(k),
        )
        entries[f"exp{k}"] = PointwiseFunction(
            label=f"exp{k}",
            evaluator=(lambda kk: (lambda x: np.exp(1j * kk * x)))(k),
            smoothness_hint=np.inf,
            derivative=dk,
        )
    d2 = PointwiseFunction("dsmooth2", lambda x: -np.sin(x) - 4.0 * np.cos(2 * x))
    d1 = PointwiseFunction("dsmooth", lambda x: np.cos(x) - 2.0 * np.sin(2 * x),
                           derivative=d2)
    entries["smooth"] = PointwiseFunction(
        "smooth", lambda x: np.sin(x) + np.cos(2 * x),
        smoothness_hint=np.inf, derivative=d1)
    dsin2 = PointwiseFunction("ddsine", lambda x: -np.sin(x))
    dsin = PointwiseFunction("dsine", np.cos, derivative=dsin2)
    entries["sine"] = PointwiseFunction(
        "sine", np.sin, smoothness_hint=np.inf, derivative=dsin)
    entries["square"] = PointwiseFunction(
        "square", _square_eval, breakpoints=(-np.pi, 0.0), smoothness_hint=0.5)
    entries["cusp05"] = PointwiseFunction(
        "cusp05", _abs_sin_pow(0.5), breakpoints=(-np.pi, 0.0), smoothness_hint=0.5)
    entries["cusp15"] = PointwiseFunction(
        "cusp15", _abs_sin_pow(1.5), breakpoints=(-np.pi, 0.0), smoothness_hint=1.5,
        derivative=PointwiseFunction("dcusp15", _cusp15_derivative,
                                     breakpoints=(-np.pi, 0.0)))
    entries["sawtooth"] = PointwiseFunction(
        "sawtooth", _sawtooth_eval, breakpoints=(0.0,), smoothness_hint=0.5)
    return entries
