"""Geodesic completion of partial distances and the Isomap embedding."""

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .model import DistanceMatrix, ValidationError, connected_components, threshold_graph
from .linalg import classical_mds


class DisconnectedGraphError(ValidationError):
    """The partial-distance graph has unreachable vertex pairs."""

    def __init__(self, u, v):
        self.u, self.v = u, v
        super().__init__(
            f"graph of partial distances is not connected: no path between vertices {u} and {v}"
        )


def all_pairs_shortest_paths(G):
    """Complete a connected edge-weighted graph to a full metric by
    shortest-path (geodesic) distances."""
    comps = connected_components(G)
    if len(comps) > 1:
        raise DisconnectedGraphError(int(comps[0][0]), int(comps[1][0]))
    n = G.n
    adj = np.zeros((n, n))
    if G.m:
        adj[G.edges[:, 0], G.edges[:, 1]] = G.lengths
        adj[G.edges[:, 1], G.edges[:, 0]] = G.lengths
    dist = dijkstra(csr_matrix(adj), directed=False)
    dist = 0.5 * (dist + dist.T)
    np.fill_diagonal(dist, 0.0)
    return DistanceMatrix(dist)


def isomap_embed(D, theta, k):
    """Isomap on the partial distances d <= theta: threshold graph,
    geodesic completion, then classical MDS.

    Returns the centered embedding together with the completed distance
    matrix the MDS step actually saw.
    """
    completed = all_pairs_shortest_paths(threshold_graph(D, theta))
    cloud, _ = classical_mds(completed, k)
    return cloud, completed
