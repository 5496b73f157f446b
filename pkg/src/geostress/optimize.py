"""Local (BFGS) and global (basin-hopping) minimization of the weighted
stress, plus the end-to-end solver tying initializers and optimizers
together."""

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .model import (
    DistanceMatrix,
    PointCloud,
    ValidationError,
    center,
    graph_from_weights,
    is_connected,
)
from .stress import StressObjective
from .linalg import classical_mds
from .isomap import isomap_embed


class NonFiniteError(RuntimeError):
    """Objective or gradient became non-finite; carries the last good iterate."""

    def __init__(self, x_last, f_last):
        self.x_last = x_last
        self.f_last = f_last
        super().__init__("non-finite objective or gradient encountered")


@dataclass(frozen=True)
class OptimConfig:
    max_iters: int = 2000
    grad_tol: float = 1e-8          # on the gradient max-norm
    f_tol: float = 1e-12            # relative cost decrease
    armijo_c1: float = 1e-4
    wolfe_c2: float = 0.9
    max_backtracks: int = 50
    bh_hops: int = 100
    bh_step: float | None = None    # None: 0.5 * diameter / sqrt(n), set by the caller
    bh_temperature: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.max_iters < 0 or self.bh_hops < 0:
            raise ValidationError("iteration counts must be nonnegative")
        if min(self.grad_tol, self.f_tol, self.armijo_c1, self.bh_temperature) <= 0:
            raise ValidationError("tolerances must be positive")
        if not self.armijo_c1 < self.wolfe_c2 < 1:
            raise ValidationError("need 0 < armijo_c1 < wolfe_c2 < 1")


@dataclass
class MinimizeResult:
    """Raw optimizer output over flattened coordinates."""

    x: np.ndarray
    cost: float
    n_iters: int
    converged: bool
    trace: list = field(default_factory=list)


@dataclass
class OptimResult:
    """Solver output: a centered cloud plus diagnostics."""

    X: PointCloud
    cost: float
    n_iters: int
    converged: bool
    trace: list = field(default_factory=list)
    init_cost: float = math.nan
    weight_graph_connected: bool = True


def _wolfe_line_search(fg, x, f0, g0, p, cfg):
    """Weak Wolfe search by bisection with expansion (Lewis & Overton).

    Returns (alpha, f_new, g_new) with sufficient decrease; curvature may
    be unmet if the bracket collapses, which is harmless for BFGS since
    updates with bad curvature are skipped.
    """
    slope0 = float(np.dot(g0, p))
    if slope0 >= 0:
        return None
    lo, hi = 0.0, math.inf
    alpha = 1.0
    best = None
    for _ in range(cfg.max_backtracks):
        f_new, g_new = fg(x + alpha * p)
        if not (np.isfinite(f_new) and np.all(np.isfinite(g_new))):
            hi = alpha  # overshoot into bad territory: shrink
        elif f_new > f0 + cfg.armijo_c1 * alpha * slope0:
            hi = alpha
        elif float(np.dot(g_new, p)) < cfg.wolfe_c2 * slope0:
            best = (alpha, f_new, g_new)
            lo = alpha
        else:
            return alpha, f_new, g_new
        alpha = 0.5 * (lo + hi) if math.isfinite(hi) else 2.0 * alpha
    return best  # Armijo-satisfying point, or None if never found


def local_minimize(fg, x0, cfg=OptimConfig()):
    """Dense BFGS with an inexact Wolfe line search.

    fg maps a flat coordinate vector to (value, gradient). The cost
    trace is monotone non-increasing; converged is True only when a
    gradient or cost tolerance triggered the exit.
    """
    x = np.asarray(x0, dtype=float).copy()
    f, g = fg(x)
    if not (np.isfinite(f) and np.all(np.isfinite(g))):
        raise NonFiniteError(x, f)
    n = x.size
    trace = [(0, f)]
    gnorm = np.abs(g).max() if n else 0.0
    if gnorm <= cfg.grad_tol:
        return MinimizeResult(x, f, 0, True, trace)
    H = np.eye(n) / max(np.linalg.norm(g), 1e-300)
    converged = False
    k = 0
    while k < cfg.max_iters:
        p = -H @ g
        step = _wolfe_line_search(fg, x, f, g, p, cfg)
        if step is None:
            break  # no acceptable step along p
        alpha, f_new, g_new = step
        if not (np.isfinite(f_new) and np.all(np.isfinite(g_new))):
            raise NonFiniteError(x, f)
        s = alpha * p
        y = g_new - g
        x = x + s
        f_prev, f, g = f, f_new, g_new
        k += 1
        trace.append((k, f))
        if np.abs(g).max() <= cfg.grad_tol:
            converged = True
            break
        if abs(f_prev - f) <= cfg.f_tol * (1.0 + abs(f)):
            converged = True
            break
        sy = float(np.dot(s, y))
        if sy > 1e-10 * np.linalg.norm(s) * np.linalg.norm(y):
            rho = 1.0 / sy
            Hy = H @ y
            # H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T
            H -= rho * (np.outer(s, Hy) + np.outer(Hy, s))
            H += rho * (rho * float(np.dot(y, Hy)) + 1.0) * np.outer(s, s)
    return MinimizeResult(x, f, k, converged, trace)


def basin_hopping(fg, x0, cfg=OptimConfig()):
    """Global search: perturb, locally minimize, Metropolis-accept.

    Hop 0 is a plain local minimization of x0, so bh_hops = 0 reduces to
    local_minimize. Fully reproducible for a fixed seed.
    """
    rng = np.random.default_rng(cfg.seed)
    base = local_minimize(fg, x0, cfg)
    step = cfg.bh_step
    if step is None:
        spread = float(np.ptp(base.x)) if base.x.size else 1.0
        step = 0.5 * max(spread, 1.0)
    best = base
    current = base
    total_iters = base.n_iters
    trace = [(0, base.cost)]
    for hop in range(1, cfg.bh_hops + 1):
        xt = current.x + rng.uniform(-step, step, size=current.x.shape)
        res = local_minimize(fg, xt, cfg)
        total_iters += res.n_iters
        delta = res.cost - current.cost
        if delta <= 0 or rng.random() < math.exp(-delta / cfg.bh_temperature):
            current = res
        if res.cost < best.cost:
            best = res
        trace.append((hop, best.cost))
    return MinimizeResult(best.x, best.cost, total_iters, best.converged, trace)


def _initial_cloud(D, k, init, cfg):
    if isinstance(init, PointCloud):
        return init
    if init == "mds":
        return classical_mds(D, k)[0]
    if init == "random":
        rng = np.random.default_rng(cfg.seed)
        r = D.max_distance() / 2.0 or 1.0
        return PointCloud(rng.uniform(-r, r, size=(D.n, k)))
    if isinstance(init, tuple) and len(init) == 2 and init[0] == "isomap":
        return isomap_embed(D, init[1], k)[0]
    raise ValidationError(f"unknown initializer {init!r}")


def solve_nlm(D, W, k, kernel="squared", init="mds", method="bfgs", cfg=OptimConfig()):
    """Minimize the weighted stress of D under W in dimension k.

    init is one of "mds", "random", ("isomap", theta) or a PointCloud;
    method is "bfgs" or "bh". If the weight graph is disconnected the
    solution set is unbounded; we warn and proceed, flagging the result.
    """
    if method not in ("bfgs", "bh"):
        raise ValidationError(f"unknown method {method!r}")
    connected = is_connected(graph_from_weights(W, D))
    if not connected:
        warnings.warn(
            "weight graph is disconnected: the solution set is unbounded "
            "and components can drift freely",
            stacklevel=2,
        )
    X0 = _initial_cloud(D, k, init, cfg)
    if X0.n != D.n or X0.k != k:
        raise ValidationError("initial cloud has the wrong shape")
    obj = StressObjective(D, W, kernel)
    if cfg.bh_step is None and method == "bh":
        cfg = replace(cfg, bh_step=0.5 * D.max_distance() / math.sqrt(D.n))
    optimizer = local_minimize if method == "bfgs" else basin_hopping
    init_cost = obj.f(X0.x.ravel())
    res = optimizer(obj.fg, X0.x.ravel(), cfg)
    X = center(PointCloud(res.x.reshape(D.n, k)))
    return OptimResult(
        X=X,
        cost=obj.value(X.x),
        n_iters=res.n_iters,
        converged=res.converged,
        trace=res.trace,
        init_cost=init_cost,
        weight_graph_connected=connected,
    )


def multi_start_solutions(D, W, k, n_starts, cfg=OptimConfig(), kernel="squared"):
    """Locally minimize from n_starts seeded random clouds.

    Returns results sorted by (cost, start index); use solution_sample
    to extract the near-optimal sub-list.
    """
    if n_starts < 1:
        raise ValidationError("n_starts must be at least 1")
    rng = np.random.default_rng(cfg.seed)
    r = D.max_distance() / 2.0 or 1.0
    obj = StressObjective(D, W, kernel)
    results = []
    for start in range(n_starts):
        x0 = rng.uniform(-r, r, size=(D.n, k))
        res = local_minimize(obj.fg, x0.ravel(), cfg)
        X = center(PointCloud(res.x.reshape(D.n, k)))
        results.append(
            (
                obj.value(X.x),
                start,
                OptimResult(X, obj.value(X.x), res.n_iters, res.converged, res.trace),
            )
        )
    results.sort(key=lambda t: (t[0], t[1]))
    return [r for _, _, r in results]


def solution_sample(results, tol=1e-12):
    """Sub-list of results whose cost is within tol * (1 + |best|) of the best."""
    if not results:
        return []
    best = results[0].cost
    return [r for r in results if r.cost - best <= tol * (1.0 + abs(best))]
