"""Scikit-learn style front end for the weighted-stress embedding."""

from sklearn.base import BaseEstimator
from sklearn.metrics import pairwise_distances
from sklearn.utils import check_array, check_random_state

from .model import DistanceMatrix, parse_weight_family, build_weight_matrix
from .optimize import OptimConfig, solve_nlm


class StressEmbedding(BaseEstimator):
    """Embed a finite metric space into R^k by weighted stress minimization.

    With constant weights this is least-square scaling; with decaying
    weights, nonlinear mapping; with hard-threshold weights, a distance
    geometry solve. The tanh family interpolates smoothly between the
    regimes as its stiffness grows.

    Parameters
    ----------
    n_components : target dimension k.
    weights : weight family, as a WeightFamily object or the CLI string
        syntax ("constant", "sammon", "exp:B", "power:Z", "heaviside:T",
        "tanh:A,T").
    kernel : "squared" (the distance-geometry style objective, default)
        or "raw" (classical least-square scaling residuals).
    init : "isomap", "mds" or "random".
    isomap_theta : neighborhood threshold for the Isomap initializer;
        required when init="isomap".
    method : "bfgs" for local quasi-Newton, "bh" for basin hopping.
    dissimilarity : "euclidean" to compute pairwise distances from a
        feature matrix, or "precomputed" for a ready distance matrix.
    max_iter, tol, random_state : optimizer budget, gradient max-norm
        tolerance, and seed for the stochastic parts.

    Attributes
    ----------
    embedding_ : (n, n_components) coordinates, centered.
    stress_ : final weighted stress.
    n_iter_ : optimizer iterations used.
    converged_ : True when a tolerance (not the budget) ended the run.
    """

    def __init__(self, n_components=2, weights="constant", kernel="squared",
                 init="mds", isomap_theta=None, method="bfgs",
                 dissimilarity="euclidean", max_iter=2000, tol=1e-8,
                 random_state=None):
        self.n_components = n_components
        self.weights = weights
        self.kernel = kernel
        self.init = init
        self.isomap_theta = isomap_theta
        self.method = method
        self.dissimilarity = dissimilarity
        self.max_iter = max_iter
        self.tol = tol
        self.random_state = random_state

    def _distance_matrix(self, X):
        X = check_array(X)
        if self.dissimilarity == "precomputed":
            return DistanceMatrix(X)
        if self.dissimilarity == "euclidean":
            return DistanceMatrix(pairwise_distances(X))
        raise ValueError(f"unknown dissimilarity {self.dissimilarity!r}")

    def fit(self, X, y=None):
        """Compute the embedding of X (features or a distance matrix)."""
        self.fit_transform(X, y)
        return self

    def fit_transform(self, X, y=None):
        D = self._distance_matrix(X)
        family = (parse_weight_family(self.weights)
                  if isinstance(self.weights, str) else self.weights)
        W = build_weight_matrix(D, family)
        seed = check_random_state(self.random_state).randint(2 ** 31)
        cfg = OptimConfig(max_iters=self.max_iter, grad_tol=self.tol, seed=seed)
        if self.init == "isomap":
            if self.isomap_theta is None:
                raise ValueError("init='isomap' requires isomap_theta")
            init = ("isomap", self.isomap_theta)
        elif self.init in ("mds", "random"):
            init = self.init
        else:
            raise ValueError(f"unknown init {self.init!r}")
        result = solve_nlm(D, W, self.n_components, kernel=self.kernel,
                           init=init, method=self.method, cfg=cfg)
        self.dissimilarity_matrix_ = D
        self.embedding_ = result.X.x
        self.stress_ = result.cost
        self.n_iter_ = result.n_iters
        self.converged_ = result.converged
        return self.embedding_
