import numpy as np
import pytest

import geostress as gs
from geostress.experiments import THREE_POINT_D, three_point_weights
from geostress.optimize import NonFiniteError
from geostress.stress import StressObjective, edge_bound_satisfied


def quadratic(c):
    def fg(x):
        d = x - c
        return float(d @ d), 2.0 * d

    return fg


class TestLocalMinimize:
    def test_convex_quadratic(self):
        c = np.array([1.0, -2.0, 3.0])
        res = gs.local_minimize(quadratic(c), np.zeros(3))
        assert res.converged
        assert np.abs(res.x - c).max() <= 1e-8

    def test_perfect_realization_stays_put(self):
        rng = np.random.default_rng(0)
        X = gs.PointCloud(rng.normal(size=(5, 2)))
        D = X.distances()
        W = gs.build_weight_matrix(D, gs.Constant())
        obj = StressObjective(D, W)
        res = gs.local_minimize(obj.fg, X.x.ravel())
        assert res.n_iters == 0
        assert np.array_equal(res.x, X.x.ravel())

    def test_two_point_dgp_on_a_line(self):
        D = gs.DistanceMatrix([[0, 1], [1, 0]])
        W = gs.WeightMatrix([[0, 1], [1, 0]])
        obj = StressObjective(D, W)
        res = gs.local_minimize(obj.fg, np.array([0.0, 0.2]))
        assert abs(abs(res.x[0] - res.x[1]) - 1.0) <= 1e-8
        assert res.cost <= 1e-16

    def test_trace_monotone_non_increasing(self):
        rng = np.random.default_rng(1)
        D = gs.PointCloud(rng.normal(size=(8, 2))).distances()
        W = gs.build_weight_matrix(D, gs.TanhSigmoid(5, 1.0))
        obj = StressObjective(D, W)
        res = gs.local_minimize(obj.fg, rng.normal(size=16))
        costs = [c for _, c in res.trace]
        assert all(b <= a for a, b in zip(costs, costs[1:]))

    def test_non_finite_objective_reports_last_good(self):
        def fg(x):
            if x[0] > 5:
                return np.nan, np.full_like(x, np.nan)
            return float((x[0] - 10) ** 2), np.array([2 * (x[0] - 10)])

        # starting inside the finite region, the search must either stay
        # finite (line search rejects bad steps) or raise with the iterate
        try:
            res = gs.local_minimize(fg, np.array([0.0]))
            assert np.isfinite(res.cost)
        except NonFiniteError as exc:
            assert np.all(np.isfinite(exc.x_last))

    def test_determinism(self):
        rng = np.random.default_rng(2)
        D = gs.PointCloud(rng.normal(size=(6, 2))).distances()
        W = gs.build_weight_matrix(D, gs.Constant())
        obj = StressObjective(D, W)
        x0 = rng.normal(size=12)
        r1 = gs.local_minimize(obj.fg, x0)
        r2 = gs.local_minimize(obj.fg, x0)
        assert np.array_equal(r1.x, r2.x)
        assert r1.trace == r2.trace


class TestBasinHopping:
    def test_zero_hops_equals_local(self):
        c = np.array([2.0, 2.0])
        cfg = gs.OptimConfig(bh_hops=0, seed=3)
        r_bh = gs.basin_hopping(quadratic(c), np.zeros(2), cfg)
        r_lo = gs.local_minimize(quadratic(c), np.zeros(2), cfg)
        assert np.array_equal(r_bh.x, r_lo.x)
        assert r_bh.cost == r_lo.cost

    def test_double_well_escapes(self):
        def fg(x):
            v = (x[0] ** 2 - 1.0) ** 2
            g = np.array([4.0 * x[0] * (x[0] ** 2 - 1.0)])
            return float(v), g

        cfg = gs.OptimConfig(bh_hops=30, bh_step=1.0, seed=4)
        res = gs.basin_hopping(fg, np.array([-0.9]), cfg)
        assert res.cost <= 1e-12
        assert abs(abs(res.x[0]) - 1.0) <= 1e-6

    def test_seeded_reproducibility(self):
        rng = np.random.default_rng(5)
        D = gs.PointCloud(rng.normal(size=(5, 2))).distances()
        W = gs.build_weight_matrix(D, gs.Constant())
        obj = StressObjective(D, W)
        x0 = rng.normal(size=10)
        cfg = gs.OptimConfig(bh_hops=10, bh_step=0.5, seed=42)
        r1 = gs.basin_hopping(obj.fg, x0, cfg)
        r2 = gs.basin_hopping(obj.fg, x0, cfg)
        assert np.array_equal(r1.x, r2.x)
        assert r1.trace == r2.trace

    def test_never_worse_than_local(self):
        rng = np.random.default_rng(6)
        D = gs.PointCloud(rng.normal(size=(5, 2))).distances()
        W = gs.build_weight_matrix(D, gs.Constant())
        obj = StressObjective(D, W)
        x0 = rng.normal(size=10)
        cfg = gs.OptimConfig(bh_hops=5, bh_step=0.3, seed=0)
        assert gs.basin_hopping(obj.fg, x0, cfg).cost <= gs.local_minimize(
            obj.fg, x0, cfg
        ).cost


class TestSolveNlm:
    def test_lss_on_embeddable_data_with_mds_init(self):
        rng = np.random.default_rng(7)
        D = gs.PointCloud(rng.normal(size=(8, 2))).distances()
        W = gs.build_weight_matrix(D, gs.Constant())
        res = gs.solve_nlm(D, W, 2, init="mds")
        assert res.cost <= 1e-10
        assert res.weight_graph_connected

    def test_rigid_three_point_realization(self):
        W = three_point_weights(1.0)
        res = gs.solve_nlm(THREE_POINT_D, W, 2, init="random",
                           cfg=gs.OptimConfig(seed=1))
        G = gs.graph_from_weights(W, THREE_POINT_D)
        assert gs.dgp_residual(res.X, THREE_POINT_D, G) <= 1e-6

    def test_cost_never_above_initial(self):
        rng = np.random.default_rng(8)
        D = gs.PointCloud(rng.normal(size=(10, 2))).distances()
        W = gs.build_weight_matrix(D, gs.TanhSigmoid(10, 1.0))
        for init in ("mds", "random"):
            res = gs.solve_nlm(D, W, 2, init=init, cfg=gs.OptimConfig(seed=2))
            assert res.cost <= res.init_cost + 1e-12

    def test_result_centered_and_cost_consistent(self):
        rng = np.random.default_rng(9)
        D = gs.PointCloud(rng.normal(size=(6, 2))).distances()
        W = gs.build_weight_matrix(D, gs.Constant())
        res = gs.solve_nlm(D, W, 2, init="random", cfg=gs.OptimConfig(seed=3))
        assert np.abs(res.X.x.sum(axis=0)).max() <= 1e-9
        assert res.cost == pytest.approx(gs.stress(res.X, D, W), rel=1e-12)

    def test_disconnected_weight_graph_warns_and_flags(self):
        D = gs.PointCloud([[0.0, 0.0], [1.0, 0.0], [5.0, 0.0], [6.0, 0.0]]).distances()
        W = gs.build_weight_matrix(D, gs.Heaviside(2.0))
        with pytest.warns(UserWarning, match="disconnected"):
            res = gs.solve_nlm(D, W, 2, init="random")
        assert not res.weight_graph_connected

    def test_scaling_leaves_minimizer_unchanged(self):
        rng = np.random.default_rng(10)
        D = gs.PointCloud(rng.normal(size=(6, 2))).distances()
        w = rng.uniform(0.2, 1.0, size=(6, 6))
        w = 0.5 * (w + w.T)
        np.fill_diagonal(w, 0.0)
        W = gs.WeightMatrix(w)
        W_half = gs.WeightMatrix(0.5 * w)
        x0 = gs.PointCloud(rng.normal(size=(6, 2)))
        res_full = gs.solve_nlm(D, W, 2, init=x0)
        res_half = gs.solve_nlm(D, W_half, 2, init=x0)
        s_full = gs.stress(res_full.X, D, W)
        s_half = gs.stress(res_half.X, D, W)
        assert s_half == pytest.approx(s_full, rel=1e-6, abs=1e-12)

    def test_edge_bound_at_converged_solutions(self):
        rng = np.random.default_rng(11)
        for _ in range(5):
            D = gs.PointCloud(rng.normal(size=(7, 2))).distances()
            W = gs.build_weight_matrix(D, gs.TanhSigmoid(8, 1.0))
            res = gs.solve_nlm(D, W, 2, init="random",
                               cfg=gs.OptimConfig(seed=int(rng.integers(1000))))
            assert edge_bound_satisfied(res.X, D, W, res.cost)


class TestMultiStart:
    def test_singleton(self):
        res = gs.multi_start_solutions(THREE_POINT_D, three_point_weights(1.0), 2, 1)
        assert len(res) == 1

    def test_rigid_instance_single_congruence_class(self):
        results = gs.multi_start_solutions(
            THREE_POINT_D, three_point_weights(1.0), 2, 20, gs.OptimConfig(seed=0)
        )
        sample = gs.solution_sample(results, tol=1e-8)
        assert len(sample) >= 2
        for i in range(len(sample)):
            for j in range(i + 1, len(sample)):
                assert gs.congruence_distance(sample[i].X, sample[j].X) <= 1e-4

    def test_flexible_instance_has_incongruent_solutions(self):
        results = gs.multi_start_solutions(
            THREE_POINT_D, three_point_weights(0.0), 2, 50, gs.OptimConfig(seed=0)
        )
        sample = gs.solution_sample(results, tol=1e-8)
        spread = max(
            gs.congruence_distance(a.X, b.X)
            for i, a in enumerate(sample)
            for b in sample[i + 1:]
        )
        assert spread >= 0.1

    def test_sorted_by_cost(self):
        results = gs.multi_start_solutions(
            THREE_POINT_D, three_point_weights(0.5), 2, 8, gs.OptimConfig(seed=1)
        )
        costs = [r.cost for r in results]
        assert costs == sorted(costs)


class TestConfigValidation:
    def test_bad_tolerances_rejected(self):
        with pytest.raises(gs.ValidationError):
            gs.OptimConfig(grad_tol=0.0)
        with pytest.raises(gs.ValidationError):
            gs.OptimConfig(bh_hops=-1)
        with pytest.raises(gs.ValidationError):
            gs.OptimConfig(armijo_c1=0.95, wolfe_c2=0.9)
