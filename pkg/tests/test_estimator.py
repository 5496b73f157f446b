import numpy as np
import pytest
from sklearn.base import clone

import geostress as gs
from geostress import StressEmbedding


class TestSklearnApi:
    def test_get_set_params_and_clone(self):
        est = StressEmbedding(n_components=3, weights="tanh:10,0.5", method="bh")
        params = est.get_params()
        assert params["n_components"] == 3
        assert params["weights"] == "tanh:10,0.5"
        cloned = clone(est)
        assert cloned.get_params() == params
        est.set_params(method="bfgs")
        assert est.method == "bfgs"

    def test_fit_returns_self_and_sets_attributes(self):
        rng = np.random.default_rng(0)
        X = rng.normal(size=(12, 2))
        est = StressEmbedding(n_components=2, random_state=0)
        assert est.fit(X) is est
        assert est.embedding_.shape == (12, 2)
        assert est.stress_ >= 0.0
        assert isinstance(est.n_iter_, int)

    def test_fit_transform_euclidean_recovers_shape(self):
        rng = np.random.default_rng(1)
        X = rng.normal(size=(10, 2))
        emb = StressEmbedding(n_components=2, random_state=0).fit_transform(X)
        # flat data in its own dimension: constant-weight stress vanishes
        assert gs.congruence_distance(gs.PointCloud(emb), gs.PointCloud(X)) <= 1e-5

    def test_precomputed_dissimilarity(self):
        cloud = gs.gen_ring(25, seed=2)
        D = cloud.distances()
        est = StressEmbedding(dissimilarity="precomputed", random_state=0)
        emb = est.fit_transform(D.d)
        assert emb.shape == (25, 2)
        assert est.stress_ <= 1e-8

    def test_isomap_init_requires_theta(self):
        D = gs.gen_ring(20, seed=3).distances()
        est = StressEmbedding(init="isomap", dissimilarity="precomputed")
        with pytest.raises(ValueError, match="isomap_theta"):
            est.fit(D.d)
        est = StressEmbedding(init="isomap", isomap_theta=0.8,
                              dissimilarity="precomputed", random_state=0)
        est.fit(D.d)
        assert est.embedding_.shape == (20, 2)

    def test_unknown_options_rejected(self):
        D = gs.gen_ring(10, seed=4).distances()
        with pytest.raises(ValueError):
            StressEmbedding(init="nope", dissimilarity="precomputed").fit(D.d)
        with pytest.raises(ValueError):
            StressEmbedding(dissimilarity="nope").fit(D.d)

    def test_random_state_reproducible(self):
        D = gs.gen_ring(15, seed=5).distances()
        kwargs = dict(dissimilarity="precomputed", init="random",
                      method="bh", random_state=7)
        e1 = StressEmbedding(**kwargs).fit(D.d)
        e2 = StressEmbedding(**kwargs).fit(D.d)
        assert np.array_equal(e1.embedding_, e2.embedding_)
