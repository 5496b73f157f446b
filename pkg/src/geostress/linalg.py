"""Classical (Torgerson) multidimensional scaling and its spectral helpers."""

from dataclasses import dataclass

import numpy as np

from .model import PointCloud, ValidationError, center


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues sorted descending with matching orthonormal columns."""

    values: np.ndarray
    vectors: np.ndarray


def gram_from_distances(D):
    """Double-centered Gram matrix B = -1/2 J (D o D) J.

    B is the Gram matrix of a centered configuration whenever D is
    Euclidean-embeddable; its row sums vanish by construction.
    """
    n = D.n
    d2 = D.d ** 2
    J = np.eye(n) - np.full((n, n), 1.0 / n)
    B = -0.5 * (J @ d2 @ J)
    return 0.5 * (B + B.T)


def symmetric_eigen(B):
    """Full eigendecomposition of a symmetric matrix.

    Values come back sorted descending; each eigenvector's sign is fixed
    by making its largest-magnitude entry positive, so identical inputs
    give identical output.
    """
    B = np.asarray(B, dtype=float)
    scale = max(np.abs(B).max(), 1.0)
    if not np.allclose(B, B.T, atol=1e-10 * scale):
        raise ValidationError("matrix is not symmetric")
    values, vectors = np.linalg.eigh(0.5 * (B + B.T))
    order = np.argsort(values)[::-1]
    values = values[order]
    vectors = vectors[:, order]
    for c in range(vectors.shape[1]):
        col = vectors[:, c]
        if col[np.abs(col).argmax()] < 0:
            vectors[:, c] = -col
    return EigenDecomposition(values, vectors)


def classical_mds(D, k):
    """Torgerson scaling: X = V_k sqrt(lambda_k) from the Gram spectrum.

    Negative eigenvalues (non-Euclidean metrics) are clamped to zero in
    the coordinates; the raw spectrum is returned alongside so callers
    can inspect how non-Euclidean the input was.
    """
    if not 1 <= k <= D.n - 1:
        raise ValidationError(f"embedding dimension k = {k} out of range for n = {D.n}")
    eig = symmetric_eigen(gram_from_distances(D))
    coords = eig.vectors[:, :k] * np.sqrt(np.maximum(eig.values[:k], 0.0))
    return center(PointCloud(coords)), eig.values.copy()


def euclidean_embeddability(D, tol=1e-8):
    """True iff the Gram matrix is positive semidefinite up to tol."""
    if D.n == 1:
        return True
    values = symmetric_eigen(gram_from_distances(D)).values
    scale = np.abs(values).max()
    if scale == 0.0:
        return True
    return bool(values.min() >= -tol * scale)
