"""Singularity-aware quadrature for the representation integrals.

Finite panels use the tanh-sinh (double exponential) rule, which absorbs
integrable endpoint singularities such as log divergences without weight
functions. Nodes are placed by their distance to the nearest endpoint so
the endpoints themselves are never sampled. Panels whose level-doubling
sequence does not settle are bisected adaptively.

Semi-infinite tails decaying like 1/(t log^2 t) are mapped to a finite
interval by u = log(t - 1) followed by v = 1/u. Truncating such a tail is
never acceptable: the remainder beyond T is of order 1/log T.

Integrands are called with 1-d numpy arrays and must return arrays (or
scalars, which are broadcast).
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .densities import DensitySpec, Kind

__all__ = [
    "QuadConfig",
    "QuadResult",
    "QuadratureError",
    "integrate_finite",
    "integrate_log_panel",
    "integrate_density_tail",
    "integrate_density_full",
    "integrate_density_laplace",
]

_EPS = np.finfo(float).eps
_TAU_MAX = 6.5
_MIN_LEVEL = 4
_MAX_LEVEL = 8
# beyond u = log(t-1) > _U_MAX the tail integrand is continued by its model shape
_U_MAX = 600.0
# exp(-s t) < exp(-_LAPLACE_CUT) is dropped in Laplace integrals
_LAPLACE_CUT = 60.0


@dataclass(frozen=True)
class QuadConfig:
    abs_tol: float = 1e-11
    rel_tol: float = 1e-11
    max_subdivisions: int = 4096
    tail_cutoff_u: float = 10.0

    def __post_init__(self):
        if not (self.abs_tol >= 1e-14 and self.rel_tol >= 1e-14):
            raise ValueError("abs_tol and rel_tol must be >= 1e-14")
        if not (1 <= self.max_subdivisions <= 10**6):
            raise ValueError("max_subdivisions must lie in [1, 1e6]")
        if not self.tail_cutoff_u > 0:
            raise ValueError("tail_cutoff_u must be positive")

    def tol(self, value: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


DEFAULT_CONFIG = QuadConfig()


@dataclass(frozen=True)
class QuadResult:
    value: float
    err_est: float
    evals: int

    def __add__(self, other: "QuadResult") -> "QuadResult":
        return QuadResult(self.value + other.value, self.err_est + other.err_est,
                          self.evals + other.evals)

    def __neg__(self):
        return QuadResult(-self.value, self.err_est, self.evals)

    def scale(self, c: float) -> "QuadResult":
        return QuadResult(c * self.value, abs(c) * self.err_est, self.evals)


ZERO = QuadResult(0.0, 0.0, 0)


class QuadratureError(RuntimeError):
    """Raised when the error target is not met; ``result`` holds the best estimate."""

    def __init__(self, msg: str, result: QuadResult):
        super().__init__(msg)
        self.result = result


@lru_cache(maxsize=None)
def _level_nodes(level: int):
    """New tanh-sinh nodes at step h = 2**-level on [-1, 1].

    Returns (delta, side, weight): distance of each node to its nearest
    endpoint, side -1/0/+1 (left, centre, right) and the weight without h.
    """
    h = 2.0 ** -level
    n = int(math.ceil(_TAU_MAX / h))
    j = np.arange(-n, n + 1)
    if level > 0:
        j = j[j % 2 != 0]
    tau = j * h
    s = 0.5 * math.pi * np.sinh(np.abs(tau))
    with np.errstate(over="ignore", under="ignore"):
        delta = np.exp(-s) / np.cosh(s)  # 1 - tanh(s), free of cancellation
        weight = 0.5 * math.pi * np.cosh(tau) / np.cosh(s) ** 2
    keep = weight > 0
    side = np.sign(tau).astype(int)
    return delta[keep], side[keep], weight[keep]


def _eval(f, x):
    y = np.asarray(f(x), dtype=float)
    if y.shape != x.shape:
        y = np.broadcast_to(y, x.shape)
    return y


def _panel(f, a: float, b: float, cfg: QuadConfig):
    """Tanh-sinh on one panel; returns (value, err, evals, converged)."""
    half = 0.5 * (b - a)
    total = 0.0
    absum = 0.0
    evals = 0
    prev = None
    value = 0.0
    err = math.inf
    for level in range(_MAX_LEVEL + 1):
        delta, side, w = _level_nodes(level)
        d = half * delta
        x = np.where(side < 0, a + d, np.where(side > 0, b - d, a + half))
        ok = (x > a) & (x < b)
        x, w = x[ok], w[ok]
        y = _eval(f, x)
        evals += x.size
        if not np.all(np.isfinite(y)):
            bad = x[~np.isfinite(y)][:3]
            raise QuadratureError(f"non-finite integrand at {bad}", QuadResult(math.nan, math.inf, evals))
        total += float(np.dot(w, y))
        absum += float(np.dot(w, np.abs(y)))
        h = 2.0 ** -level
        value = half * h * total
        floor = 16 * _EPS * half * h * absum
        if prev is not None:
            err = max(abs(value - prev), floor)
            if level >= _MIN_LEVEL and err <= cfg.tol(value):
                return value, err, evals, True
        prev = value
    return value, err, evals, False


def integrate_finite(f, a: float, b: float, hints=(), cfg: QuadConfig | None = None) -> QuadResult:
    """Integrate f over (a, b) with adaptive tanh-sinh panels.

    ``hints`` are singularity locations (floats or objects with ``.location``);
    interior ones become panel boundaries so that every singular point sits
    at a panel endpoint. Raises QuadratureError after ``max_subdivisions``.
    """
    cfg = cfg or DEFAULT_CONFIG
    a, b = float(a), float(b)
    if a == b:
        return ZERO
    if a > b:
        return -integrate_finite(f, b, a, hints, cfg)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError("integrate_finite needs finite limits")
    cuts = sorted({float(getattr(h, "location", h)) for h in hints} | {a, b})
    cuts = [c for c in cuts if a <= c <= b]
    heap = []
    evals = 0
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        v, e, n, _ = _panel(f, lo, hi, cfg)
        evals += n
        heapq.heappush(heap, (-e, lo, hi, v))
    splits = 0
    while True:
        value = math.fsum(item[3] for item in heap)
        err = math.fsum(-item[0] for item in heap)
        if err <= cfg.tol(value):
            return QuadResult(value, err, evals)
        if splits >= cfg.max_subdivisions:
            raise QuadratureError(
                f"no convergence on [{a}, {b}] after {splits} subdivisions (err {err:.3g})",
                QuadResult(value, err, evals))
        _, lo, hi, _ = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not (lo < mid < hi):
            raise QuadratureError(f"panel [{lo}, {hi}] cannot be split further",
                                  QuadResult(value, err, evals))
        for p, q in ((lo, mid), (mid, hi)):
            v, e, n, _ = _panel(f, p, q, cfg)
            evals += n
            heapq.heappush(heap, (-e, p, q, v))
        splits += 1


def _in_log_coords(f, origin: float):
    # t = origin + e^u, dt = e^u du
    def fu(u):
        eu = np.exp(u)
        return _eval(f, origin + eu) * eu
    return fu


def integrate_log_panel(f, t_lo: float, t_hi: float, origin: float = 1.0, hints=(),
                        cfg: QuadConfig | None = None) -> QuadResult:
    """Integrate f over (t_lo, t_hi) in the coordinate u = log(t - origin).

    Suited to integrands spread over many decades of t - origin.
    ``hints`` are given in t.
    """
    if t_lo <= origin:
        raise ValueError("t_lo must exceed origin")
    uh = [math.log(float(getattr(h, "location", h)) - origin) for h in hints]
    return integrate_finite(_in_log_coords(f, origin), math.log(t_lo - origin),
                            math.log(t_hi - origin), uh, cfg)


def integrate_density_tail(f, T: float, cfg: QuadConfig | None = None, origin: float = 1.0) -> QuadResult:
    """Integrate f over (T, inf) for f ~ c / (t (log^2(t-1) + pi^2)).

    u = log(t - 1) is used up to ``cfg.tail_cutoff_u``, and v = 1/u beyond,
    which turns the tail into a bounded smooth integrand on (0, 1/u_cut].
    For v < 1/600 (t beyond ~1e260, out of double range for most
    integrands) the v-integrand G, smooth at v = 0, is continued as
    q(v) / (1 + pi^2 v^2) with q the cubic through G (1 + pi^2 v^2) at
    v = k/600, k = 1..4. This is exact for the sigma and omega tails and
    accurate to O(v^4) for shifted shapes c / ((u + a)^2 + pi^2).
    """
    cfg = cfg or DEFAULT_CONFIG
    if not T > origin:
        raise ValueError("T must exceed the tail origin")
    u0 = math.log(T - origin)
    cut = cfg.tail_cutoff_u
    fu = _in_log_coords(f, origin)
    res = ZERO
    if u0 < cut:
        res = integrate_finite(fu, u0, cut, (), cfg)
    v_hi = 1.0 / max(u0, cut)
    v_floor = 1.0 / _U_MAX
    anchor = {}

    def direct(v):
        with np.errstate(over="ignore", invalid="ignore", under="ignore"):
            return fu(1.0 / v) / (v * v)

    def gv(v):
        low = v < v_floor
        out = np.empty_like(v)
        out[~low] = direct(v[~low])
        if np.any(low):
            if "nodes" not in anchor:
                nodes = v_floor * np.arange(1.0, 5.0)
                anchor["nodes"] = nodes
                anchor["vals"] = direct(nodes) * (1 + math.pi ** 2 * nodes ** 2)
            nodes, vals = anchor["nodes"], anchor["vals"]
            vv = v[low]
            acc = np.zeros_like(vv)
            for i in range(4):
                li = np.ones_like(vv)
                for j in range(4):
                    if j != i:
                        li *= (vv - nodes[j]) / (nodes[i] - nodes[j])
                acc += vals[i] * li
            out[low] = acc / (1 + math.pi ** 2 * vv * vv)
        return out

    body = integrate_finite(gv, 0.0, v_hi, (v_floor,) if v_floor < v_hi else (), cfg)
    if "vals" in anchor:
        # closure error: cubic vs quadratic extrapolation at v = 0, over a width v_floor
        y = anchor["vals"]
        q3 = 4 * y[0] - 6 * y[1] + 4 * y[2] - y[3]
        q2 = 3 * y[0] - 3 * y[1] + y[2]
        body = QuadResult(body.value, body.err_est + float(v_floor * abs(q3 - q2)), body.evals)
    return res + body


def _support(spec: DensitySpec, weight):
    """Integrand on a subset of (1, inf) or [1/r, inf) plus its interior knots.

    The boundary density phi lives on (-inf, -1]; it is reflected to (1, inf).
    """
    w = weight if weight is not None else (lambda t: 1.0)
    if spec.kind is Kind.PHI:
        rinv = 1.0 / spec.r
        g = lambda s: spec(-s) * _eval(w, -s)
        return g, 1.0, [rinv]
    g = lambda t: spec(t) * _eval(w, t)
    lo = spec.domain[0]
    return g, lo, [k for k in spec.knots if k > lo]


def integrate_density_full(spec: DensitySpec, weight=None, cfg: QuadConfig | None = None) -> QuadResult:
    """Integrate weight(t) * density(t) over the whole support of ``spec``.

    Panels end exactly at the knots; beyond the last knot K a finite panel
    (K, 2K) is followed by the substituted tail on (2K, inf).
    """
    cfg = cfg or DEFAULT_CONFIG
    g, lo, knots = _support(spec, weight)
    pts = [lo, *knots]
    res = ZERO
    for a, b in zip(pts[:-1], pts[1:]):
        res = res + integrate_finite(g, a, b, (a, b), cfg)
    last = pts[-1]
    T = 2.0 * max(last, 1.0)
    res = res + integrate_finite(g, last, T, (last,), cfg)
    return res + integrate_density_tail(g, T, cfg)


def integrate_density_laplace(spec: DensitySpec, s: float, weight=None,
                              cfg: QuadConfig | None = None) -> QuadResult:
    """Laplace-type integral of weight(t) exp(-s t) density(t) over the support.

    The kernel makes the tail exponentially small, so the range is cut at
    t = 1 + 60/s; between the last knot and the cut the integral runs in
    u = log(t - 1), split at u = log(1/s) where the kernel turns over.
    """
    cfg = cfg or DEFAULT_CONFIG
    s = float(s)
    if not s > 0:
        raise ValueError("Laplace variable must be positive")
    w = weight if weight is not None else (lambda t: 1.0)
    g0, lo, knots = _support(spec, lambda t: np.exp(-s * t) * _eval(w, t))
    pts = [lo, *knots]
    res = ZERO
    for a, b in zip(pts[:-1], pts[1:]):
        res = res + integrate_finite(g0, a, b, (a, b), cfg)
    last = pts[-1]
    T = 2.0 * max(last, 1.0)
    t_end = 1.0 + _LAPLACE_CUT / s
    if t_end <= T:
        return res + integrate_finite(g0, last, t_end, (last,), cfg)
    res = res + integrate_finite(g0, last, T, (last,), cfg)
    t_turn = 1.0 + 1.0 / s
    hints = (t_turn,) if T < t_turn < t_end else ()
    return res + integrate_log_panel(g0, T, t_end, 1.0, hints, cfg)
