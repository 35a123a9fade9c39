# Copyright 2026 The Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import pytest

import cfx


def test_version():
    assert cfx.__version__ == "0.1.0"


def test_fixture_values():
    inst = cfx.fixture("nonmonotone")
    assert inst.m == 3
    assert cfx.black_box_utility(inst) == pytest.approx(0.44, abs=1e-12)
    assert cfx.joint_objective(inst, [0]) == pytest.approx(0.9, abs=1e-12)
    assert cfx.joint_objective(inst, [0, 1]) == pytest.approx(0.5, abs=1e-12)
    assert cfx.optimal_policy(inst, [0]) == [1.0, 0.0, 0.0]
    policy, explanations, utility = cfx.randomized_joint(inst, 1, seed=3)
    assert explanations == [0]
    assert policy == [1.0, 0.0, 0.0]
    assert utility == pytest.approx(0.9, abs=1e-12)
    assert cfx.brute_force_joint(inst, 1)[2] == pytest.approx(0.9, abs=1e-12)


def test_instance_roundtrip_and_validation():
    inf = math.inf
    inst = cfx.Instance([0.5, 0.5], [0.9, 0.1], [[0, 1], [inf, 0]], 0.3)
    assert inst.cost[1][0] == inf
    assert inst.px == [0.5, 0.5]
    with pytest.raises(ValueError):
        cfx.Instance([0.5, 0.5], [0.1, 0.9], [[0, 1], [1, 0]], 0.3)
    sorted_inst, perm = cfx.sort_canonical(
        [0.5, 0.5], [0.1, 0.9], [[0, 1], [2, 0]], 0.3)
    assert perm == [1, 0]
    assert sorted_inst.cost[0][1] == 2


def test_synthetic_pipeline():
    inst = cfx.generate_synthetic(m=40, seed=7)
    assert inst.m == 40
    policy = cfx.threshold_policy(inst)
    black_box = cfx.black_box_utility(inst)
    chosen = cfx.greedy_fixed_policy(inst, policy, 4)
    assert len(chosen) <= 4
    assert cfx.utility(inst, policy, chosen) >= black_box - 1e-12
    for regime in (cfx.min_cost_explanations, cfx.diverse_explanations):
        assert len(regime(inst, policy, 4)) <= 4
    response = cfx.best_respond(inst, policy, chosen)
    assert sum(response["induced_px"]) == pytest.approx(1.0)
    assert len(response["moved"]) == 40


def test_leakage_and_transport():
    inst = cfx.generate_synthetic(m=30, seed=2)
    policy, explanations, utility = cfx.randomized_joint(inst, 3, seed=1)
    assert cfx.leakage_utility(inst, policy, explanations, 0.0) == utility
    analytic = cfx.leakage_utility(inst, policy, explanations, 0.5)
    mean, se = cfx.leakage_monte_carlo(
        inst, policy, explanations, 0.5, samples=50000, seed=4)
    assert abs(mean - analytic) <= 4 * se + 1e-12
    matrix = cfx.transport_matrix(inst, policy, explanations, bins=5)
    assert len(matrix) == 5 and all(len(row) == 5 for row in matrix)
    assert sum(map(sum, matrix)) <= 1.0 + 1e-12


def test_matroid():
    inst = cfx.generate_synthetic(m=20, seed=5)
    policy = cfx.threshold_policy(inst)
    groups = [list(range(0, 20, 2)), list(range(1, 20, 2))]
    chosen = cfx.greedy_matroid(inst, policy, groups, [1, 1])
    assert len(chosen) <= 2
    improvement = cfx.group_improvement(inst, policy, chosen, groups)
    assert len(improvement) == 2


def test_run_experiment_is_deterministic():
    config = {"m": 20, "k": 2, "repetitions": 2, "seed": 9}
    first = cfx.run_experiment(config)
    assert first == cfx.run_experiment(config)
    assert first.startswith("# cfx ")
    with pytest.raises(ValueError):
        cfx.run_experiment({"bogus": 1})


def test_acceptance_criterion():
    assert cfx.acceptance_criterion_count() == 12
    passed, line = cfx.run_criterion(1)
    assert passed and line.startswith("PASS")
