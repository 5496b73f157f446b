"""Weighted stress functionals and their analytic gradients.

Two kernels are supported:

* "squared" -- sum_ij w_ij (||x_i - x_j||^2 - d_ij^2)^2, the smooth
  objective whose zero set solves the distance geometry problem;
* "raw" -- sum_ij w_ij (||x_i - x_j|| - d_ij)^2, the least-square
  scaling / nonlinear-mapping cost.

Reported values use the ordered double sum over all (i, j), i.e. twice
the i < j sum; internally only the upper triangle is touched and pairs
with zero weight are skipped entirely.
"""

import numpy as np

from .model import ValidationError

KERNELS = ("squared", "raw")

# below this separation the raw kernel's unit vector is replaced by the
# subgradient 0
_COINCIDENT = 1e-12


def _check_kernel(kernel):
    if kernel not in KERNELS:
        raise ValidationError(f"unknown kernel {kernel!r}, expected one of {KERNELS}")


class StressObjective:
    """Stress and gradient as a function of flattened coordinates.

    Pair indices with positive weight are precomputed once, so repeated
    evaluation inside an optimizer costs O(number of active pairs).
    """

    def __init__(self, D, W, kernel="squared", weight_scale=1.0):
        _check_kernel(kernel)
        if D.n != W.n:
            raise ValidationError("distance and weight matrices disagree in size")
        if weight_scale < 0:
            raise ValidationError("weight_scale must be nonnegative")
        self.n = D.n
        self.kernel = kernel
        iu, ju = np.triu_indices(self.n, k=1)
        active = (W.w[iu, ju] > 0.0) & (weight_scale > 0.0)
        self.iu = iu[active]
        self.ju = ju[active]
        self.w = weight_scale * W.w[self.iu, self.ju]
        self.d = D.d[self.iu, self.ju]
        self.d2 = self.d ** 2

    def value(self, x):
        diff = x[self.iu] - x[self.ju]
        sq = np.einsum("ij,ij->i", diff, diff)
        if self.kernel == "squared":
            r = sq - self.d2
        else:
            r = np.sqrt(sq) - self.d
        return 2.0 * float(np.dot(self.w, r * r))

    def value_and_grad(self, x):
        diff = x[self.iu] - x[self.ju]
        sq = np.einsum("ij,ij->i", diff, diff)
        if self.kernel == "squared":
            r = sq - self.d2
            coef = 8.0 * self.w * r
        else:
            nd = np.sqrt(sq)
            r = nd - self.d
            safe = np.where(nd < _COINCIDENT, 1.0, nd)
            coef = np.where(nd < _COINCIDENT, 0.0, 4.0 * self.w * r / safe)
        val = 2.0 * float(np.dot(self.w, r * r))
        grad = np.zeros_like(x)
        contrib = coef[:, None] * diff
        for c in range(x.shape[1]):
            grad[:, c] = np.bincount(self.iu, contrib[:, c], self.n) - np.bincount(
                self.ju, contrib[:, c], self.n
            )
        return val, grad

    # flattened views for the optimizer
    def f(self, xflat):
        return self.value(xflat.reshape(self.n, -1))

    def fg(self, xflat):
        v, g = self.value_and_grad(xflat.reshape(self.n, -1))
        return v, g.ravel()


def stress(X, D, W, kernel="squared", weight_scale=1.0):
    """Weighted stress of cloud X against distances D under weights W.

    weight_scale evaluates the cost under weight_scale * W without
    constraining the product to the unit hypercube; the value scales
    exactly linearly in it.
    """
    if X.n != D.n:
        raise ValidationError("point cloud and distance matrix disagree in size")
    return StressObjective(D, W, kernel, weight_scale).value(X.x)


def stress_gradient(X, D, W, kernel="squared"):
    """Analytic gradient of stress w.r.t. the coordinates, shape (n, k)."""
    if X.n != D.n:
        raise ValidationError("point cloud and distance matrix disagree in size")
    return StressObjective(D, W, kernel).value_and_grad(X.x)[1]


def dgp_residual(X, D, G):
    """Worst absolute edge-length violation of X as a realization of G."""
    if X.n != D.n or X.n != G.n:
        raise ValidationError("size mismatch between cloud, distances and graph")
    if G.m == 0:
        return 0.0
    diff = X.x[G.edges[:, 0]] - X.x[G.edges[:, 1]]
    lengths = np.sqrt((diff ** 2).sum(axis=1))
    return float(np.abs(lengths - G.lengths).max())


def edge_bound_satisfied(X, D, W, cost, slack=1e-9):
    """Check ||x_i - x_j||^2 <= d_ij^2 + sqrt(cost / w_ij) on every
    positive-weight pair; each squared-kernel term is at most the total,
    so this must hold at any point, converged or not."""
    obj = StressObjective(D, W, "squared")
    diff = X.x[obj.iu] - X.x[obj.ju]
    sq = np.einsum("ij,ij->i", diff, diff)
    bound = obj.d2 + np.sqrt(np.maximum(cost, 0.0) / obj.w)
    return bool(np.all(sq <= bound + slack))
