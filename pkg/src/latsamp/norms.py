"""Lattice norms on the circle: Lebesgue, weighted Lebesgue, Orlicz.

All continuous norms use the normalized measure ``dx/2pi``, so the constant 1
has norm 1 in every Lebesgue space.  The weighted spaces carry the weight
``|2 sin(x/2)|^beta`` with ``-1 < beta < p - 1`` (singular or degenerate at
``x = 0``); Orlicz norms are Luxemburg norms computed by bisection.

The discrete seminorm of a function over a node set is the norm of the step
function ``sum_k |f(x_k)| chi_[x_k, x_{k+1})``.  Step-function norms are exact
closed forms (weight cells are integrated with graded panels near 0), never
generic quadrature — this keeps them an independent route from the continuous
quadrature norms they are compared against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .model import (GL_NODES, GL_WEIGHTS, TWO_PI, DenseGridCache, NodeSet,
                    PointwiseFunction, build_cache)
from .trigpoly import TrigPoly

__all__ = [
    "NormSpec", "parse_spec", "StepFunction", "norm", "discrete_seminorm",
    "luxemburg", "dilation_norm", "dilation_norm_info", "steklov_bound_probe",
]


@dataclass(frozen=True)
class NormSpec:
    """Identifies a lattice norm.

    kind = 'lebesgue' (exponent p), 'weighted' (p and weight exponent beta),
    or 'orlicz' (Young function 'power' with exponent p, or 'llogl' for
    t*log(1+t)).
    """

    kind: str
    p: Optional[float] = None
    beta: float = 0.0
    phi: Optional[str] = None

    def __post_init__(self):
        if self.kind == "lebesgue":
            if self.p is None or self.p < 1:
                raise ValueError("lebesgue norm needs exponent p >= 1")
        elif self.kind == "weighted":
            if self.p is None or self.p < 1:
                raise ValueError("weighted norm needs exponent p >= 1")
            if not (-1.0 < self.beta < self.p - 1.0):
                raise ValueError("weight exponent must satisfy -1 < beta < p-1")
        elif self.kind == "orlicz":
            if self.phi not in ("power", "llogl"):
                raise ValueError("orlicz norm needs phi in {'power', 'llogl'}")
            if self.phi == "power" and (self.p is None or self.p < 1):
                raise ValueError("power Young function needs exponent p >= 1")
        else:
            raise ValueError(f"unknown norm kind {self.kind!r}")

    @property
    def id(self) -> str:
        if self.kind == "lebesgue":
            return f"lp:{self.p:g}" if self.p not in (1.0, 2.0) else f"l{self.p:g}"
        if self.kind == "weighted":
            return f"wlp:{self.p:g}:{self.beta:g}"
        if self.phi == "power":
            return f"orlicz:power:{self.p:g}"
        return "orlicz:llogl"

    def weight(self, x) -> np.ndarray:
        """The lattice weight ``|2 sin(x/2)|^beta`` (1 when beta = 0)."""
        x = np.asarray(x, dtype=float)
        if self.kind != "weighted" or self.beta == 0.0:
            return np.ones_like(x)
        return np.abs(2.0 * np.sin(0.5 * x)) ** self.beta

    def young(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if self.phi == "llogl":
            return t * np.log1p(t)
        return t ** self.p

    def young_inverse(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        if self.phi == "llogl":
            return _llogl_inverse(y)
        return y ** (1.0 / self.p)


def parse_spec(text: str) -> NormSpec:
    """Parse ids like 'l1', 'l2', 'lp:1.5', 'wlp:2:0.5', 'orlicz:llogl'."""
    t = text.strip().lower()
    if t in ("l1", "l2"):
        return NormSpec("lebesgue", p=float(t[1]))
    parts = t.split(":")
    try:
        if parts[0] == "lp" and len(parts) == 2:
            return NormSpec("lebesgue", p=float(parts[1]))
        if parts[0] == "wlp" and len(parts) == 3:
            return NormSpec("weighted", p=float(parts[1]), beta=float(parts[2]))
        if parts[0] == "orlicz":
            if len(parts) == 2 and parts[1] == "llogl":
                return NormSpec("orlicz", phi="llogl")
            if len(parts) == 3 and parts[1] == "power":
                return NormSpec("orlicz", p=float(parts[2]), phi="power")
    except ValueError as exc:
        raise ValueError(f"bad norm id {text!r}: {exc}") from None
    raise ValueError(f"bad norm id {text!r}")


def _llogl_inverse(y):
    """Inverse of t -> t*log(1+t) on [0, inf), by bisection."""
    y = np.atleast_1d(np.asarray(y, dtype=float))
    lo = np.zeros_like(y)
    hi = np.maximum(1.0, y / np.log(2.0) + 1.0)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        too_low = mid * np.log1p(mid) < y
        lo = np.where(too_low, mid, lo)
        hi = np.where(too_low, hi, mid)
    out = 0.5 * (lo + hi)
    return out if out.shape else float(out)


def luxemburg(modular, scale: float, iters: int = 60) -> float:
    """Luxemburg norm: the lambda with ``modular(lambda) = 1``.

    ``modular`` must be nonincreasing in lambda; ``scale`` is a positive
    starting guess (any crude magnitude estimate of the function).
    """
    if scale <= 0.0 or not np.isfinite(scale):
        return 0.0
    hi = scale
    for _ in range(200):
        if modular(hi) <= 1.0:
            break
        hi *= 2.0
    else:
        raise ArithmeticError("luxemburg bracket: modular never drops below 1")
    lo = hi
    for _ in range(1100):
        trial = lo / 2.0
        if modular(trial) > 1.0 or trial < 1e-300:
            break
        lo = trial
    if modular(lo) <= 1.0 and lo < 1e-299:
        return 0.0
    lo = lo / 2.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if modular(mid) > 1.0:
            lo = mid
        else:
            hi = mid
    return hi


# ----------------------------------------------------------------------------
# Weight integrals over intervals (closed-form backbone of the step norms)
# ----------------------------------------------------------------------------

_W_GRADE_FLOOR = 1e-10
_W_PER_DECADE = 40


def _weight_piece(a: float, b: float, beta: float) -> float:
    """integral of |2 sin(x/2)|^beta over [a, b], 0 not interior to (a, b)."""
    if b <= a:
        return 0.0
    sliver = 0.0
    # grade toward an endpoint sitting at the weight singularity; the last
    # sliver [0, floor] carries the closed-form mass eps^(beta+1)/(beta+1)
    # (the weight is |x|^beta there to within O(eps^2) relative error)
    edges = [np.linspace(a, b, 9)]
    for endpoint, sign in ((a, +1.0), (b, -1.0)):
        if endpoint == 0.0 and beta != 0.0:
            length = b - a
            floor = min(_W_GRADE_FLOOR, 0.5 * length)
            num = int(np.ceil(_W_PER_DECADE * np.log10(length / floor)))
            edges.append(endpoint + sign * np.geomspace(floor, length, num=max(num, 2)))
            sliver += floor ** (beta + 1.0) / (beta + 1.0)
            cut = floor
    e = np.unique(np.concatenate(edges))
    e = e[(e >= a) & (e <= b)]
    if sliver:
        e = e[np.abs(e) >= 0.5 * cut]  # drop edges inside the analytic sliver
    widths = np.diff(e)
    x = e[:-1, None] + 0.5 * widths[:, None] * (GL_NODES[None, :] + 1.0)
    w = 0.5 * widths[:, None] * GL_WEIGHTS[None, :]
    return float(np.sum(w * np.abs(2.0 * np.sin(0.5 * x)) ** beta) + sliver)


def weight_cell_integrals(lefts: np.ndarray, widths: np.ndarray, beta: float) -> np.ndarray:
    """integral of the weight over each circle cell [x_k, x_k + width_k)."""
    out = np.empty(lefts.size)
    for i, (a, wd) in enumerate(zip(lefts, widths)):
        b = a + wd
        pieces = []
        # unwrap past pi
        if b > np.pi:
            pieces.append((a, np.pi))
            pieces.append((-np.pi, b - TWO_PI))
        else:
            pieces.append((a, b))
        total = 0.0
        for pa, pb in pieces:
            if pa < 0.0 < pb:
                total += _weight_piece(pa, 0.0, beta) + _weight_piece(0.0, pb, beta)
            else:
                total += _weight_piece(pa, pb, beta)
        out[i] = total
    return out


# ----------------------------------------------------------------------------
# Step functions
# ----------------------------------------------------------------------------


@dataclass
class StepFunction:
    """Piecewise constant on circle cells ``[lefts_k, lefts_k + widths_k)``."""

    lefts: np.ndarray
    widths: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        self.lefts = np.asarray(self.lefts, dtype=float)
        self.widths = np.asarray(self.widths, dtype=float)
        self.values = np.asarray(self.values)
        if not (self.lefts.size == self.widths.size == self.values.size):
            raise ValueError("lefts, widths, values must have equal length")
        if np.any(self.widths <= 0):
            raise ValueError("cell widths must be positive")
        if abs(self.widths.sum() - TWO_PI) > 1e-9:
            raise ValueError("cells must tile the circle")

    @classmethod
    def from_nodes(cls, values, nodes: NodeSet) -> "StepFunction":
        values = np.asarray(values)
        if values.size != nodes.count:
            raise ValueError("one value per node required")
        return cls(lefts=nodes.nodes, widths=nodes.gaps(), values=values)


def _step_norm(sf: StepFunction, spec: NormSpec) -> float:
    v = np.abs(sf.values).astype(float)
    if spec.kind == "lebesgue":
        return float((np.sum(v ** spec.p * sf.widths) / TWO_PI) ** (1.0 / spec.p))
    if spec.kind == "weighted":
        cells = weight_cell_integrals(sf.lefts, sf.widths, spec.beta)
        return float((np.sum(v ** spec.p * cells) / TWO_PI) ** (1.0 / spec.p))
    # orlicz
    vmax = v.max(initial=0.0)
    if vmax == 0.0:
        return 0.0

    def modular(lam):
        return float(np.sum(spec.young(v / lam) * sf.widths) / TWO_PI)

    return luxemburg(modular, scale=vmax)


# ----------------------------------------------------------------------------
# Continuous norms
# ----------------------------------------------------------------------------


def _field_norm(cache: DenseGridCache, spec: NormSpec) -> float:
    v = np.abs(cache.gl_values)
    gw = cache.gl_weights()
    if spec.kind == "lebesgue":
        return float((np.sum(gw * v ** spec.p) / TWO_PI) ** (1.0 / spec.p))
    if spec.kind == "weighted":
        w = spec.weight(cache.gl_points())
        panel = np.sum(gw * v ** spec.p * w, axis=1)
        if spec.beta < 0.0:
            # panels abutting the weight singularity: Gauss-Legendre misses the
            # |x|^beta mass; swap in the closed form eps^(beta+1)/(beta+1)
            j0 = int(np.searchsorted(cache.edges, 0.0))
            if j0 < cache.edges.size and cache.edges[j0] == 0.0:
                for j in (j0 - 1, j0):
                    if 0 <= j < cache.panel_count:
                        eps = cache.edges[j + 1] - cache.edges[j]
                        if eps <= 1e-8:
                            vp = float(np.mean(v[j] ** spec.p))
                            panel[j] = vp * eps ** (spec.beta + 1.0) / (spec.beta + 1.0)
        return float((np.sum(panel) / TWO_PI) ** (1.0 / spec.p))
    vmax = v.max(initial=0.0)
    if vmax == 0.0:
        return 0.0

    def modular(lam):
        return float(np.sum(gw * spec.young(v / lam)) / TWO_PI)

    return luxemburg(modular, scale=vmax)


def poly_norm(poly: TrigPoly, spec: NormSpec, oversample: int = 32) -> float:
    """Norm of a trigonometric polynomial.

    Plain Lebesgue norms use the uniform rectangle rule on an oversampled FFT
    grid (exact for even integer p once the grid resolves ``p * degree``);
    weighted and Orlicz norms go through the graded panel cache.
    """
    deg = max(poly.degree, 1)
    if spec.kind == "lebesgue":
        m = max(1024, oversample * deg)
        vals = np.abs(poly.on_uniform_grid(m))
        return float(np.mean(vals ** spec.p) ** (1.0 / spec.p))
    cache = build_cache(poly.as_pointwise(), resolution=max(1024, 16 * deg))
    return _field_norm(cache, spec)


Normable = Union[StepFunction, DenseGridCache, TrigPoly, PointwiseFunction]


def norm(obj: Normable, spec: NormSpec, resolution: Optional[int] = None,
         n_scale: Optional[int] = None) -> float:
    """Norm dispatcher for the types the package works with.

    Step functions use exact cell sums; caches integrate over their panels;
    polynomials use :func:`poly_norm`; bare pointwise functions are cached
    first (at ``resolution`` / ``n_scale``, see :func:`build_cache`).
    """
    if isinstance(obj, StepFunction):
        return _step_norm(obj, spec)
    if isinstance(obj, DenseGridCache):
        return _field_norm(obj, spec)
    if isinstance(obj, TrigPoly):
        return poly_norm(obj, spec)
    if isinstance(obj, PointwiseFunction):
        return _field_norm(build_cache(obj, resolution=resolution, n_scale=n_scale), spec)
    raise TypeError(f"cannot take a norm of {type(obj).__name__}")


def discrete_seminorm(f, nodes: NodeSet, spec: NormSpec) -> float:
    """Norm of the step function carrying ``|f(x_k)|`` on the node cells.

    ``f`` may be a PointwiseFunction (sampled exactly, honoring declared jump
    values), a TrigPoly, or a plain value array matching the nodes.
    """
    if isinstance(f, PointwiseFunction):
        values = f(nodes.nodes)
    elif isinstance(f, TrigPoly):
        values = f.at(nodes.nodes)
    else:
        values = np.asarray(f)
        if values.size != nodes.count:
            raise ValueError("value array must match the node count")
    return _step_norm(StepFunction.from_nodes(values, nodes), spec)


# ----------------------------------------------------------------------------
# Dilation norms
# ----------------------------------------------------------------------------


def dilation_norm_info(spec: NormSpec, r: float, trials: int = 48, seed: int = 0):
    """Operator norm of ``f -> f(r .)`` with the method used to obtain it.

    Returns ``(value, method)`` where method is 'closed-form' (Lebesgue and
    unweighted cases, r^(-1/p)), 'grid-sup' (Orlicz: sup of
    ``phi^{-1}(t)/phi^{-1}(rt)`` over a log grid), or 'empirical' (weighted
    with beta != 0: sup over a seeded ensemble of dilated polynomials —
    an estimate, not a certified bound).
    """
    if r <= 0:
        raise ValueError("dilation factor must be positive")
    if spec.kind == "lebesgue" or (spec.kind == "weighted" and spec.beta == 0.0):
        return r ** (-1.0 / spec.p), "closed-form"
    if spec.kind == "orlicz":
        if spec.phi == "power":
            return r ** (-1.0 / spec.p), "closed-form"
        t = np.geomspace(1e-8, 1e8, 400)
        vals = spec.young_inverse(t) / spec.young_inverse(r * t)
        return float(np.max(vals)), "grid-sup"
    # weighted, beta != 0: seeded empirical estimate
    rng = np.random.default_rng(np.random.SeedSequence([int(seed), 911]))
    best = 0.0
    for _ in range(trials):
        deg = int(rng.integers(1, 12))
        c = rng.standard_normal(2 * deg + 1) + 1j * rng.standard_normal(2 * deg + 1)
        poly = TrigPoly(c)
        dil = PointwiseFunction(
            "dilated", lambda x, P=poly: P.at(r * np.asarray(x)))
        num = norm(dil, spec, resolution=2048)
        den = poly_norm(poly, spec)
        if den > 0:
            best = max(best, num / den)
    return best, "empirical"


def dilation_norm(spec: NormSpec, r: float) -> float:
    return dilation_norm_info(spec, r)[0]


# ----------------------------------------------------------------------------
# Window-average boundedness probe
# ----------------------------------------------------------------------------


@dataclass
class SteklovBoundReport:
    spec_id: str
    sup_ratio: float
    per_h: dict
    trials: int
    seed: int


def steklov_bound_probe(spec: NormSpec, trials: int = 24, seed: int = 0,
                        hs=(0.1, 0.5, 1.0, np.pi / 3)) -> SteklovBoundReport:
    """Empirical norm bound of the window average ``A_h`` on this space.

    Ratios ``||A_h f|| / ||f||`` over a seeded ensemble of random polynomials
    plus the non-smooth corpus entries.  On Lebesgue spaces the average is a
    contraction, so the sup is a quadrature sanity check as much as a bound.
    """
    from .steklov import steklov as apply_average
    from .model import corpus

    rng = np.random.default_rng(np.random.SeedSequence([int(seed), 417]))
    ensemble = []
    for _ in range(trials):
        deg = int(rng.integers(1, 24))
        decay = 1.0 / (1.0 + np.abs(np.arange(-deg, deg + 1)))
        c = decay * (rng.standard_normal(2 * deg + 1) + 1j * rng.standard_normal(2 * deg + 1))
        ensemble.append(TrigPoly(c))
    rough = [corpus()[lbl] for lbl in ("square", "cusp05", "sawtooth")]

    per_h = {}
    for h in hs:
        worst = 0.0
        for poly in ensemble:
            den = poly_norm(poly, spec)
            if den == 0.0:
                continue
            num = poly_norm(apply_average(poly, h), spec)
            worst = max(worst, num / den)
        for f in rough:
            cache = build_cache(f, resolution=2048)
            den = _field_norm(cache, spec)
            num = _field_norm(apply_average(cache, h), spec)
            worst = max(worst, num / den)
        per_h[float(h)] = worst
    return SteklovBoundReport(
        spec_id=spec.id, sup_ratio=max(per_h.values()), per_h=per_h,
        trials=trials, seed=int(seed))
