import numpy as np
import pytest

from ebmax.diffusion import BenefitEstimator, ExactBenefitOracle
from ebmax.greedy import (
    best_single_node,
    greedy_ratio_select,
    lazy_greedy_select,
    modified_greedy_select,
)

from helpers import (
    isolated_vs_clique_instance,
    make_economics,
    make_graph,
    random_instance,
)


def oracle_for(graph, econ):
    return ExactBenefitOracle(graph, econ)


class TestRatioGreedy:
    def test_counterexample_instance_picks_isolated_node(self):
        # the cheap isolated target has ratio 1/(1-eps) = 2 > 1, so the ratio
        # greedy takes it, strands budget 3.5, and earns only 1 of the
        # achievable 4
        graph, econ, budget = isolated_vs_clique_instance(clique_size=4, eps=0.5)
        est = oracle_for(graph, econ)
        res = greedy_ratio_select(est, econ, budget)
        assert res.seeds == [0]
        assert res.estimated_benefit == 1.0
        assert budget - res.spent == 3.5

    def test_single_affordable_target(self):
        g = make_graph(3, [(1, 2, 0.5)])
        econ = make_economics(3, targets=[0], benefits={0: 6.0}, costs={0: 2.0})
        est = oracle_for(g, econ)
        res = greedy_ratio_select(est, econ, 2.0)
        assert res.seeds == [0]
        assert res.estimated_benefit == 6.0

    def test_nothing_affordable(self):
        g = make_graph(2, [(0, 1, 0.5)])
        econ = make_economics(2, targets=[1], costs={0: 10.0, 1: 10.0})
        est = oracle_for(g, econ)
        res = greedy_ratio_select(est, econ, 1.0)
        assert res.seeds == []
        assert res.estimated_benefit == 0.0
        assert res.stop_reason == "no_affordable"

    def test_rejects_bad_budget(self):
        g = make_graph(2, [(0, 1, 0.5)])
        econ = make_economics(2, targets=[1])
        est = oracle_for(g, econ)
        with pytest.raises(ValueError):
            greedy_ratio_select(est, econ, 0.0)
        with pytest.raises(ValueError):
            greedy_ratio_select(est, econ, -3)

    def test_zero_gain_early_stop_versus_literal_loop(self):
        # no targets at all: every gain is zero
        g = make_graph(3, [(0, 1, 0.5), (1, 2, 0.5)])
        econ = make_economics(3, targets=[])
        est = oracle_for(g, econ)
        res = greedy_ratio_select(est, econ, 10.0)
        assert res.seeds == []
        assert res.stop_reason == "zero_gain"
        literal = greedy_ratio_select(est, econ, 10.0, stop_on_zero_gain=False)
        assert literal.seeds == [0, 1, 2]  # burns budget on zero-gain nodes
        assert literal.spent == 3.0

    def test_monotone_progress_along_trace(self):
        rng = np.random.default_rng(70)
        for _ in range(10):
            g, econ = random_instance(rng)
            est = BenefitEstimator(g, econ, samples=300, master_seed=int(rng.integers(1 << 30)))
            res = greedy_ratio_select(est, econ, float(rng.uniform(1, 8)))
            prefix_estimates = [est.estimate(res.seeds[:k]) for k in range(len(res.seeds) + 1)]
            for a, b in zip(prefix_estimates, prefix_estimates[1:]):
                assert b >= a
            assert all(t.gain >= 0 for t in res.trace)

    def test_budget_feasibility(self):
        rng = np.random.default_rng(71)
        for _ in range(15):
            g, econ = random_instance(rng)
            est = BenefitEstimator(g, econ, samples=128, master_seed=int(rng.integers(1 << 30)))
            budget = float(rng.uniform(0.5, 10))
            for select in (greedy_ratio_select, lazy_greedy_select, modified_greedy_select):
                res = select(est, econ, budget)
                assert res.spent <= budget + 1e-12
                assert res.spent == pytest.approx(float(np.sum(econ.cost[res.seeds])))
                assert len(res.trace) == len(res.seeds)
                assert len(set(res.seeds)) == len(res.seeds)


class TestBestSingleNode:
    def test_counterexample_instance_finds_clique_node(self):
        graph, econ, budget = isolated_vs_clique_instance(clique_size=4, eps=0.5)
        est = oracle_for(graph, econ)
        node, benefit = best_single_node(est, econ, budget)
        assert node == 1  # lowest-id clique node; each earns the whole clique
        assert benefit == 4.0

    def test_nothing_affordable(self):
        g = make_graph(2, [(0, 1, 0.5)])
        econ = make_economics(2, targets=[1], costs={0: 9.0, 1: 9.0})
        est = oracle_for(g, econ)
        assert best_single_node(est, econ, 1.0) == (None, 0.0)

    def test_single_node_graph(self):
        g = make_graph(1, [])
        econ = make_economics(1, targets=[0], benefits={0: 9.0})
        est = oracle_for(g, econ)
        node, benefit = best_single_node(est, econ, 5.0)
        assert node == 0
        assert benefit == 9.0


class TestModifiedGreedy:
    def test_counterexample_instance_guarded(self):
        graph, econ, budget = isolated_vs_clique_instance(clique_size=4, eps=0.5)
        est = oracle_for(graph, econ)
        res = modified_greedy_select(est, econ, budget)
        assert res.seeds == [1]
        assert res.estimated_benefit == 4.0
        # achieved-vs-best ratio of the unguarded greedy is 1/clique_size
        unguarded = greedy_ratio_select(est, econ, budget)
        assert unguarded.estimated_benefit / res.estimated_benefit == 1.0 / 4.0

    def test_empty_target_set(self):
        g = make_graph(3, [(0, 1, 0.5)])
        econ = make_economics(3, targets=[])
        est = oracle_for(g, econ)
        res = modified_greedy_select(est, econ, 5.0)
        assert res.estimated_benefit == 0.0
        assert res.seeds == []

    def test_tie_prefers_greedy_branch(self):
        # one isolated target: both branches find it, greedy result returned
        g = make_graph(2, [])
        econ = make_economics(2, targets=[0], benefits={0: 5.0})
        est = oracle_for(g, econ)
        res = modified_greedy_select(est, econ, 3.0)
        greedy = greedy_ratio_select(est, econ, 3.0)
        assert res.seeds == greedy.seeds
        assert res.stop_reason != "single_node"


class TestLazyGreedy:
    def test_matches_eager_on_random_instances(self):
        rng = np.random.default_rng(80)
        for _ in range(30):
            g, econ = random_instance(rng, max_nodes=10, max_arcs=16)
            est = BenefitEstimator(g, econ, samples=128, master_seed=int(rng.integers(1 << 30)))
            budget = float(rng.uniform(1, 12))
            eager = greedy_ratio_select(est, econ, budget)
            lazy = lazy_greedy_select(est, econ, budget)
            assert lazy.seeds == eager.seeds
            assert lazy.estimated_benefit == eager.estimated_benefit

    def test_counterexample_instance(self):
        graph, econ, budget = isolated_vs_clique_instance(clique_size=4, eps=0.5)
        est = oracle_for(graph, econ)
        res = lazy_greedy_select(est, econ, budget)
        assert res.seeds == [0]

    def test_never_more_evaluations_than_eager(self):
        rng = np.random.default_rng(81)
        for _ in range(15):
            g, econ = random_instance(rng, max_nodes=10, max_arcs=16)
            seed = int(rng.integers(1 << 30))
            budget = float(rng.uniform(1, 12))
            eager_est = BenefitEstimator(g, econ, samples=64, master_seed=seed)
            eager = greedy_ratio_select(eager_est, econ, budget)
            lazy_est = BenefitEstimator(g, econ, samples=64, master_seed=seed)
            lazy = lazy_greedy_select(lazy_est, econ, budget)
            assert lazy.evaluations <= eager.evaluations

    def test_dominant_center_commits_with_one_staleness_check(self):
        # cheap dominant center; in round 2 the best stale candidate stays
        # best after one recomputation, so exactly one evaluation happens
        arcs = [(0, v, 0.1) for v in range(1, 5)]
        g = make_graph(5, arcs)
        econ = make_economics(
            5,
            targets=[1, 2, 3, 4],
            benefits={1: 10.0, 2: 5.0, 3: 4.0, 4: 3.0},
            costs={0: 0.1},
        )
        est = BenefitEstimator(g, econ, samples=500, master_seed=5)
        res = lazy_greedy_select(est, econ, 3.0)
        assert res.seeds[0] == 0
        assert res.trace[1].evaluations == 1

    def test_rejects_bad_budget(self):
        g = make_graph(2, [(0, 1, 0.5)])
        econ = make_economics(2, targets=[1])
        est = oracle_for(g, econ)
        with pytest.raises(ValueError):
            lazy_greedy_select(est, econ, 0)

    def test_strict_mode_matches_eager(self):
        rng = np.random.default_rng(82)
        for _ in range(10):
            g, econ = random_instance(rng, max_nodes=8, max_arcs=12)
            est = BenefitEstimator(g, econ, samples=64, master_seed=int(rng.integers(1 << 30)))
            budget = float(rng.uniform(1, 15))
            eager = greedy_ratio_select(est, econ, budget, stop_on_zero_gain=False)
            lazy = lazy_greedy_select(est, econ, budget, stop_on_zero_gain=False)
            assert lazy.seeds == eager.seeds


class TestApproximationBound:
    def test_guarantee_on_exhaustive_instances(self):
        # floor constant 1 - 1/sqrt(e) ~= 0.3935 against the enumerated optimum
        rng = np.random.default_rng(90)
        for _ in range(20):
            g, econ = random_instance(rng, max_nodes=7, max_arcs=12)
            oracle = ExactBenefitOracle(g, econ)
            budget = float(rng.uniform(1, 10))
            res = modified_greedy_select(oracle, econ, budget)
            opt = 0.0
            n = g.node_count
            for mask in range(1 << n):
                seeds = [v for v in range(n) if (mask >> v) & 1]
                if float(np.sum(econ.cost[seeds])) <= budget:
                    opt = max(opt, oracle.estimate(seeds))
            assert res.estimated_benefit >= 0.3935 * opt - 1e-12
