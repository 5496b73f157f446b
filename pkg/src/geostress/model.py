"""Core domain types: distance matrices, weight families, weight matrices,
point clouds and the graphs induced by positive weights.

All types are immutable value objects; every operation here is a pure
function, so everything is safe to share between threads.
"""

from dataclasses import dataclass
from collections import deque

import numpy as np

__all__ = [
    "ValidationError",
    "DistanceMatrix",
    "WeightMatrix",
    "PointCloud",
    "DistanceGraph",
    "Constant",
    "SammonInverse",
    "ExpDecay",
    "PowerDecay",
    "Heaviside",
    "TanhSigmoid",
    "eval_weight",
    "parse_weight_family",
    "build_weight_matrix",
    "graph_from_weights",
    "threshold_graph",
    "is_connected",
    "center",
]


class ValidationError(ValueError):
    """Raised when an input violates a structural invariant."""


def _freeze(a):
    a = np.ascontiguousarray(a, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric n x n nonnegative dissimilarities with zero diagonal."""

    d: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.d, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValidationError(f"distance matrix must be square, got shape {d.shape}")
        if not np.all(np.isfinite(d)):
            raise ValidationError("distance matrix has non-finite entries")
        if not np.allclose(d, d.T, atol=1e-12):
            raise ValidationError("distance matrix is not symmetric")
        if np.any(np.diag(d) != 0.0):
            raise ValidationError("distance matrix diagonal must be zero")
        if np.any(d < 0):
            raise ValidationError("distances must be nonnegative")
        d = 0.5 * (d + d.T)  # exact symmetry
        object.__setattr__(self, "d", _freeze(d))

    @property
    def n(self):
        return self.d.shape[0]

    def max_distance(self):
        return float(self.d.max()) if self.n > 1 else 0.0


@dataclass(frozen=True)
class WeightMatrix:
    """Symmetric n x n weights in [0, 1] with zero diagonal."""

    w: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.w, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValidationError(f"weight matrix must be square, got shape {w.shape}")
        if not np.allclose(w, w.T, atol=1e-12):
            raise ValidationError("weight matrix is not symmetric")
        if np.any(w < 0) or np.any(w > 1):
            raise ValidationError("weights must lie in [0, 1]")
        if np.any(np.diag(w) != 0.0):
            raise ValidationError("weight matrix diagonal must be zero")
        w = 0.5 * (w + w.T)
        object.__setattr__(self, "w", _freeze(w))

    @property
    def n(self):
        return self.w.shape[0]

    def scaled(self, c):
        """c * W for 0 <= c <= 1 (stays inside the unit hypercube)."""
        return WeightMatrix(c * self.w)


@dataclass(frozen=True)
class PointCloud:
    """n points in R^k, one per row."""

    x: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        if x.ndim != 2:
            raise ValidationError(f"point cloud must be 2-d, got shape {x.shape}")
        if not np.all(np.isfinite(x)):
            raise ValidationError("point cloud has non-finite coordinates")
        object.__setattr__(self, "x", _freeze(x))

    @property
    def n(self):
        return self.x.shape[0]

    @property
    def k(self):
        return self.x.shape[1]

    def distances(self):
        """Full Euclidean distance matrix of the cloud."""
        diff = self.x[:, None, :] - self.x[None, :, :]
        d = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
        np.fill_diagonal(d, 0.0)
        return DistanceMatrix(0.5 * (d + d.T))

    def diameter(self):
        if self.n < 2:
            return 0.0
        diff = self.x[:, None, :] - self.x[None, :, :]
        return float(np.sqrt((diff ** 2).sum(-1)).max())


@dataclass(frozen=True)
class DistanceGraph:
    """Undirected graph with strictly positive edge lengths.

    edges is an (m, 2) int array with i < j in each row, lengths an (m,)
    float array aligned with it.
    """

    n: int
    edges: np.ndarray
    lengths: np.ndarray

    def __post_init__(self):
        edges = np.asarray(self.edges, dtype=int).reshape(-1, 2)
        lengths = np.asarray(self.lengths, dtype=float).reshape(-1)
        if edges.shape[0] != lengths.shape[0]:
            raise ValidationError("edges and lengths disagree in length")
        if edges.size:
            if np.any(edges[:, 0] == edges[:, 1]):
                raise ValidationError("self-loops are not allowed")
            if np.any(edges < 0) or np.any(edges >= self.n):
                raise ValidationError("edge endpoint out of range")
            canon = np.sort(edges, axis=1)
            if len({(int(i), int(j)) for i, j in canon}) != edges.shape[0]:
                raise ValidationError("duplicate edge")
            if np.any(lengths <= 0):
                raise ValidationError("edge lengths must be strictly positive")
            edges = canon
        edges.flags.writeable = False
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "lengths", _freeze(lengths))

    @property
    def m(self):
        return self.edges.shape[0]

    def adjacency(self):
        adj = [[] for _ in range(self.n)]
        for (i, j), d in zip(self.edges, self.lengths):
            adj[i].append((int(j), float(d)))
            adj[j].append((int(i), float(d)))
        return adj


# ---------------------------------------------------------------------------
# weight families


@dataclass(frozen=True)
class Constant:
    """omega(d) = 1: plain least-square scaling."""

    def __call__(self, d):
        return np.ones_like(np.asarray(d, dtype=float))


@dataclass(frozen=True)
class SammonInverse:
    """omega(d) = 1/d, the classical relative-error weighting."""

    def __call__(self, d):
        d = np.asarray(d, dtype=float)
        if np.any(d == 0):
            raise ValidationError("inverse-distance weight undefined at d = 0")
        return 1.0 / d


@dataclass(frozen=True)
class ExpDecay:
    beta: float

    def __post_init__(self):
        if self.beta <= 0:
            raise ValidationError("beta must be positive")

    def __call__(self, d):
        return np.exp(-self.beta * np.asarray(d, dtype=float))


@dataclass(frozen=True)
class PowerDecay:
    z: float

    def __post_init__(self):
        if self.z <= 0:
            raise ValidationError("z must be positive")

    def __call__(self, d):
        d = np.asarray(d, dtype=float)
        if np.any(d == 0):
            raise ValidationError("power-decay weight undefined at d = 0")
        return d ** (-self.z)


@dataclass(frozen=True)
class Heaviside:
    """omega(d) = 1 if d <= theta else 0 (d == theta counts as inside)."""

    theta: float

    def __post_init__(self):
        if self.theta <= 0:
            raise ValidationError("theta must be positive")

    def __call__(self, d):
        return (np.asarray(d, dtype=float) <= self.theta).astype(float)


@dataclass(frozen=True)
class TanhSigmoid:
    """omega(d) = (1 - tanh(a (d - theta))) / 2, a smooth step.

    Converges uniformly to the hard threshold away from d = theta as the
    stiffness a grows.
    """

    a: float
    theta: float

    def __post_init__(self):
        if self.a <= 0 or self.theta <= 0:
            raise ValidationError("a and theta must be positive")

    def __call__(self, d):
        return 0.5 * (1.0 - np.tanh(self.a * (np.asarray(d, dtype=float) - self.theta)))


WeightFamily = Constant | SammonInverse | ExpDecay | PowerDecay | Heaviside | TanhSigmoid


def eval_weight(family, d):
    """Evaluate a weight family at distance(s) d >= 0 (no clamping)."""
    d = np.asarray(d, dtype=float)
    if np.any(d < 0):
        raise ValidationError("distances must be nonnegative")
    out = family(d)
    return float(out) if out.ndim == 0 else out


def parse_weight_family(text):
    """Parse CLI syntax: constant | sammon | exp:B | power:Z | heaviside:T | tanh:A,T."""
    name, _, args = text.partition(":")
    name = name.strip().lower()
    try:
        if name == "constant":
            return Constant()
        if name == "sammon":
            return SammonInverse()
        if name == "exp":
            return ExpDecay(float(args))
        if name == "power":
            return PowerDecay(float(args))
        if name == "heaviside":
            return Heaviside(float(args))
        if name == "tanh":
            a, theta = (float(s) for s in args.split(","))
            return TanhSigmoid(a, theta)
    except (ValueError, ValidationError) as exc:
        raise ValidationError(f"bad weight family {text!r}: {exc}") from exc
    raise ValidationError(f"unknown weight family {text!r}")


def build_weight_matrix(D, family, clamp=True):
    """Weight matrix w_ij = omega(d_ij) off the diagonal, zero on it.

    Weights are clamped into [0, 1] (inverse-distance families can exceed
    1 below unit distance); set clamp=False to get the raw evaluations in
    a plain array instead of a WeightMatrix.
    """
    d = D.d
    n = D.n
    w = np.zeros_like(d)
    mask = ~np.eye(n, dtype=bool)
    try:
        w[mask] = eval_weight(family, d[mask])
    except ValidationError:
        # re-raise naming the offending pair
        for i in range(n):
            for j in range(n):
                if i != j:
                    try:
                        eval_weight(family, d[i, j])
                    except ValidationError as exc:
                        raise ValidationError(
                            f"weight undefined for pair ({i}, {j}) with d = {d[i, j]}: {exc}"
                        ) from exc
        raise
    if not clamp:
        return w
    return WeightMatrix(np.clip(w, 0.0, 1.0))


def graph_from_weights(W, D, eps=0.0):
    """Graph with an edge wherever w_ij > eps, carrying length d_ij.

    eps > 0 gives the effective-support graph of smooth weight families
    whose tails never reach exact zero.
    """
    if W.n != D.n:
        raise ValidationError("weight and distance matrices disagree in size")
    iu, ju = np.triu_indices(W.n, k=1)
    keep = W.w[iu, ju] > eps
    edges = np.column_stack([iu[keep], ju[keep]])
    return DistanceGraph(W.n, edges, D.d[iu[keep], ju[keep]])


def threshold_graph(D, theta):
    """Graph on pairs with d_ij <= theta, lengths d_ij."""
    if theta <= 0:
        raise ValidationError("theta must be positive")
    iu, ju = np.triu_indices(D.n, k=1)
    keep = D.d[iu, ju] <= theta
    edges = np.column_stack([iu[keep], ju[keep]])
    return DistanceGraph(D.n, edges, D.d[iu[keep], ju[keep]])


def is_connected(G):
    """BFS reachability of every vertex from vertex 0."""
    if G.n <= 1:
        return True
    adj = G.adjacency()
    seen = np.zeros(G.n, dtype=bool)
    seen[0] = True
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v, _ in adj[u]:
            if not seen[v]:
                seen[v] = True
                queue.append(v)
    return bool(seen.all())


def connected_components(G):
    """List of vertex-index arrays, one per component, in first-seen order."""
    adj = G.adjacency()
    seen = np.zeros(G.n, dtype=bool)
    comps = []
    for start in range(G.n):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v, _ in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    queue.append(v)
        comps.append(np.array(sorted(comp)))
    return comps


def center(X):
    """Translate the cloud so its coordinate-wise mean is zero."""
    return PointCloud(X.x - X.x.mean(axis=0, keepdims=True))
