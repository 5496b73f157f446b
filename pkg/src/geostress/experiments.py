"""Seeded studies: the ring dataset, the stiffness/threshold sweep, the
rigidity discontinuity demo and the smooth-to-hard-threshold convergence
check."""

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .model import (
    DistanceMatrix,
    Heaviside,
    PointCloud,
    TanhSigmoid,
    ValidationError,
    WeightMatrix,
    build_weight_matrix,
    eval_weight,
)
from .stress import stress
from .isomap import DisconnectedGraphError
from .optimize import OptimConfig, multi_start_solutions, solution_sample, solve_nlm
from .compare import congruence_distance, solution_set_distance

# the 3-point instance whose eta -> 0 limit turns a rigid triangle into
# a flexible hinge: d(1,2) = d(1,3) = 1, d(2,3) = sqrt(2)
THREE_POINT_D = DistanceMatrix(
    [[0.0, 1.0, 1.0], [1.0, 0.0, math.sqrt(2.0)], [1.0, math.sqrt(2.0), 0.0]]
)


def three_point_weights(eta):
    """Weights fixing both legs and scaling the hypotenuse by eta in [0, 1]."""
    if not 0.0 <= eta <= 1.0:
        raise ValidationError("eta must lie in [0, 1]")
    return WeightMatrix([[0.0, 1.0, 1.0], [1.0, 0.0, eta], [1.0, eta, 0.0]])


def gen_ring(n=100, r_in=0.8, r_out=1.0, seed=0, uniform_area=True):
    """n i.i.d. points in the annulus r_in <= ||p|| <= r_out.

    uniform_area draws the radius by inverse CDF so density is uniform
    w.r.t. area; otherwise the radius itself is uniform.
    """
    if not 0 < r_in < r_out:
        raise ValidationError("need 0 < r_in < r_out")
    if n < 1:
        raise ValidationError("n must be at least 1")
    rng = np.random.default_rng(seed)
    angle = rng.uniform(0.0, 2.0 * math.pi, size=n)
    u = rng.uniform(0.0, 1.0, size=n)
    if uniform_area:
        radius = np.sqrt(u * (r_out ** 2 - r_in ** 2) + r_in ** 2)
    else:
        radius = r_in + u * (r_out - r_in)
    return PointCloud(np.column_stack([radius * np.cos(angle), radius * np.sin(angle)]))


@dataclass
class SweepCell:
    theta: float
    a: float
    method: str
    init_cost: float = math.nan
    final_cost: float = math.nan
    converged: bool = False
    failed: bool = False
    failure: str = ""
    wall_time: float = 0.0


@dataclass
class SweepReport:
    rows: list = field(default_factory=list)
    dataset_seed: int | None = None

    def cell(self, theta, a, method):
        for row in self.rows:
            if row.theta == theta and row.a == a and row.method == method:
                return row
        raise KeyError((theta, a, method))


def _sweep_cell(D, theta, a, method, k, cfg, kernel):
    cell = SweepCell(theta=theta, a=a, method=method)
    t0 = time.perf_counter()
    try:
        W = build_weight_matrix(D, TanhSigmoid(a, theta))
        res = solve_nlm(D, W, k, kernel=kernel,
                        init=("isomap", theta), method=method, cfg=cfg)
        cell.init_cost = res.init_cost
        cell.final_cost = res.cost
        cell.converged = res.converged
    except DisconnectedGraphError as exc:
        cell.failed = True
        cell.failure = str(exc)
    cell.wall_time = time.perf_counter() - t0
    return cell


def continuity_sweep(D, thetas, stiffnesses, methods=("bfgs", "bh"), k=2,
                     cfg=OptimConfig(), kernel="squared", dataset_seed=None,
                     n_jobs=1):
    """Grid of (theta, a, method) runs with smooth-step weights and
    Isomap initialization at the same theta.

    Cells whose partial-distance graph is disconnected are recorded as
    failed rather than aborting the sweep. Cells are independent; n_jobs
    > 1 runs them in parallel, with assembly always in grid order.
    """
    if not thetas or not stiffnesses or not len(methods):
        raise ValidationError("sweep grid must be nonempty")
    grid = [(theta, a, method)
            for theta in thetas for a in stiffnesses for method in methods]
    if n_jobs != 1:
        from joblib import Parallel, delayed

        rows = Parallel(n_jobs=n_jobs)(
            delayed(_sweep_cell)(D, theta, a, method, k, cfg, kernel)
            for theta, a, method in grid
        )
    else:
        rows = [_sweep_cell(D, theta, a, method, k, cfg, kernel)
                for theta, a, method in grid]
    return SweepReport(rows=list(rows), dataset_seed=dataset_seed)


def rigidity_demo(etas, n_starts=20, cfg=OptimConfig(), k=2):
    """Probe the jump from rigid to flexible as eta -> 0 on the 3-point
    instance: multi-start samples per eta, their internal spread, and
    their set distance to the eta = 0 sample.

    Returns a list of dicts, one per eta, plus the reference sample.
    """
    if not etas:
        raise ValidationError("etas must be nonempty")
    samples = {}
    for eta in etas:
        results = multi_start_solutions(THREE_POINT_D, three_point_weights(eta),
                                        k, n_starts, cfg)
        samples[eta] = solution_sample(results, tol=max(cfg.f_tol, 1e-8))
    ref = samples.get(0.0)
    if ref is None:
        results = multi_start_solutions(THREE_POINT_D, three_point_weights(0.0),
                                        k, n_starts, cfg)
        ref = solution_sample(results, tol=max(cfg.f_tol, 1e-8))
    rows = []
    for eta in etas:
        clouds = [r.X for r in samples[eta]]
        spread = 0.0
        for i in range(len(clouds)):
            for j in range(i + 1, len(clouds)):
                spread = max(spread, congruence_distance(clouds[i], clouds[j]))
        rows.append(
            {
                "eta": eta,
                "sample_size": len(clouds),
                "max_pairwise_congruence": spread,
                "distance_to_flexible_sample": solution_set_distance(
                    clouds, [r.X for r in ref]
                ),
                "best_cost": samples[eta][0].cost,
            }
        )
    return rows


def zero_weight_demo(D, W, X, eta_list):
    """Tabulate stress(X, eta W) / stress(X, W): the ratio is exactly eta.

    If the base stress vanishes the ratios are undefined and the rows are
    flagged exact_zero instead.
    """
    base = stress(X, D, W)
    rows = []
    for eta in eta_list:
        scaled = stress(X, D, W, weight_scale=eta)
        if base == 0.0:
            rows.append({"eta": eta, "ratio": math.nan, "exact_zero": True})
        else:
            rows.append({"eta": eta, "ratio": scaled / base, "exact_zero": False})
    return rows


def heaviside_convergence(theta, a_list, d_grid, exclusion):
    """Sup deviation of the smooth step from the hard threshold on the
    grid, excluding the band |d - theta| < exclusion where convergence
    cannot be uniform."""
    if exclusion <= 0:
        raise ValidationError("exclusion must be positive")
    d_grid = np.asarray(d_grid, dtype=float)
    if np.any(d_grid <= 0):
        raise ValidationError("d_grid must be strictly positive")
    keep = np.abs(d_grid - theta) >= exclusion
    hard = eval_weight(Heaviside(theta), d_grid[keep])
    rows = []
    for a in a_list:
        smooth = eval_weight(TanhSigmoid(a, theta), d_grid[keep])
        rows.append(
            {
                "a": a,
                "sup_deviation": float(np.abs(smooth - hard).max()) if keep.any() else 0.0,
                "bound": 0.5 * (1.0 - math.tanh(a * exclusion)),
            }
        )
    return rows
