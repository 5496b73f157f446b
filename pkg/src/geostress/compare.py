"""Distances between point clouds and between sampled solution sets:
Hausdorff (clouds as unlabeled sets) and Procrustes congruence (clouds
as labeled configurations, quotiented by isometries)."""

import numpy as np
from scipy.spatial.distance import cdist

from .model import ValidationError


def hausdorff_points(A, B):
    """Directed and symmetric Hausdorff distances between two clouds
    viewed as point sets.

    Returns (delta(A, B), delta(B, A), d_H) where delta(A, B) is the
    largest distance from a point of A to its nearest point of B.
    """
    if A.n == 0 or B.n == 0:
        raise ValidationError("Hausdorff distance needs nonempty clouds")
    if A.k != B.k:
        raise ValidationError("clouds live in different dimensions")
    d = cdist(A.x, B.x)
    delta_ab = float(d.min(axis=1).max())
    delta_ba = float(d.min(axis=0).max())
    return delta_ab, delta_ba, max(delta_ab, delta_ba)


def congruence_distance(X, Y):
    """Minimal RMS row discrepancy between X and Y over all isometries.

    Both clouds are centered, then the orthogonal Procrustes problem is
    solved by SVD with reflections permitted. Zero iff the labeled
    configurations are congruent.
    """
    if X.n != Y.n or X.k != Y.k:
        raise ValidationError("clouds must share n and k for congruence comparison")
    a = X.x - X.x.mean(axis=0)
    b = Y.x - Y.x.mean(axis=0)
    # argmin_R ||a R - b||_F over orthogonal R is U V^T from a^T b = U S V^T;
    # applying R and measuring directly avoids the cancellation the closed-form
    # residual ||a||^2 + ||b||^2 - 2 tr(S) suffers near zero
    u, _, vt = np.linalg.svd(a.T @ b)
    resid = a @ (u @ vt) - b
    return float(np.sqrt((resid ** 2).sum() / X.n))


def solution_set_distance(S1, S2):
    """Hausdorff distance between two finite solution samples, with the
    congruence distance as ground metric so each isometry orbit collapses
    to a point."""
    if not S1 or not S2:
        raise ValidationError("solution samples must be nonempty")
    d = np.array([[congruence_distance(x, y) for y in S2] for x in S1])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))
