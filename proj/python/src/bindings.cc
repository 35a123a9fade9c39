// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>
#include <string>
#include <vector>

#include "cfx/acceptance.h"
#include "cfx/algorithms.h"
#include "cfx/baselines.h"
#include "cfx/behavior.h"
#include "cfx/core.h"
#include "cfx/datagen.h"
#include "cfx/fixtures.h"
#include "cfx/harness.h"
#include "cfx/random.h"

namespace py = pybind11;

namespace cfx {
namespace {

std::vector<std::vector<double>> CostRows(const CostMatrix& cost) {
  std::vector<std::vector<double>> rows(cost.size(),
                                        std::vector<double>(cost.size()));
  for (int i = 0; i < cost.size(); ++i) {
    for (int j = 0; j < cost.size(); ++j) {
      rows[i][j] = cost(i, j).is_infinite()
                       ? std::numeric_limits<double>::infinity()
                       : cost(i, j).value();
    }
  }
  return rows;
}

std::vector<double> Values(const Policy& policy) {
  return {policy.values().begin(), policy.values().end()};
}

Policy ToPolicy(const Instance& instance, std::vector<double> values) {
  if (static_cast<int>(values.size()) != instance.m()) {
    throw std::invalid_argument("policy length does not match the instance");
  }
  return Policy(std::move(values));
}

ExplanationSet ToSet(const Instance& instance, std::vector<int> indices) {
  ExplanationSet set(std::move(indices));
  set.CheckWithin(instance.m());
  return set;
}

py::tuple Joint(const JointSolution& solution) {
  return py::make_tuple(Values(solution.policy),
                        solution.explanations.indices(), solution.utility);
}

}  // namespace
}  // namespace cfx

PYBIND11_MODULE(_cfx, m) {
  using namespace cfx;
  m.doc() = "Counterfactual explanations under strategic behavior.";
  m.attr("__version__") = kToolVersion;

  py::class_<Instance>(m, "Instance")
      .def(py::init([](std::vector<double> px, std::vector<double> py_,
                       const std::vector<std::vector<double>>& cost,
                       double gamma) {
             InstanceData data;
             data.px = std::move(px);
             data.py = std::move(py_);
             data.cost = CostMatrix::FromDoubles(cost);
             data.gamma = gamma;
             return Instance::Create(std::move(data));
           }),
           py::arg("px"), py::arg("py"), py::arg("cost"), py::arg("gamma"),
           "Validated instance; py must be nonincreasing. Use inf for "
           "unreachable pairs.")
      .def_property_readonly("m", &Instance::m)
      .def_property_readonly("gamma", &Instance::gamma)
      .def_property_readonly("px",
                             [](const Instance& i) { return i.data().px; })
      .def_property_readonly("py",
                             [](const Instance& i) { return i.data().py; })
      .def_property_readonly(
          "cost", [](const Instance& i) { return CostRows(i.cost()); })
      .def("__repr__", [](const Instance& i) {
        return "<cfx.Instance m=" + std::to_string(i.m()) + ">";
      });

  m.def(
      "sort_canonical",
      [](std::vector<double> px, std::vector<double> py_,
         const std::vector<std::vector<double>>& cost, double gamma) {
        CanonicalInstance c =
            SortCanonical(std::move(px), std::move(py_),
                          CostMatrix::FromDoubles(cost), gamma);
        return py::make_tuple(std::move(c.instance), c.permutation);
      },
      py::arg("px"), py::arg("py"), py::arg("cost"), py::arg("gamma"),
      "Returns (instance, permutation) with py sorted nonincreasing; "
      "permutation[new] = old.");

  m.def(
      "generate_synthetic",
      [](int size, double gamma, uint64_t seed, double finite_fraction,
         double far_cost, bool symmetric, double weight_mean,
         double weight_stddev) {
        SynthConfig config;
        config.m = size;
        config.gamma = gamma;
        config.seed = seed;
        config.finite_fraction = finite_fraction;
        config.far_cost = far_cost;
        config.symmetric = symmetric;
        config.weight_mean = weight_mean;
        config.weight_stddev = weight_stddev;
        CheckSynthConfig(config);
        return GenerateSynthetic(config);
      },
      py::arg("m") = 200, py::arg("gamma") = 0.3, py::arg("seed") = 0,
      py::arg("finite_fraction") = 0.5, py::arg("far_cost") = 2.0,
      py::arg("symmetric") = false, py::arg("weight_mean") = 0.5,
      py::arg("weight_stddev") = 0.1);

  m.def("fixture", &FixtureByName, py::arg("name"));
  m.def("fixture_names", &FixtureNames);

  m.def(
      "threshold_policy",
      [](const Instance& i) { return Values(ThresholdPolicy(i)); },
      py::arg("instance"));
  m.def("black_box_utility", &BlackBoxUtility, py::arg("instance"));
  m.def(
      "utility",
      [](const Instance& i, std::vector<double> policy,
         std::vector<int> explanations) {
        return Utility(i, ToPolicy(i, std::move(policy)),
                       ToSet(i, std::move(explanations)));
      },
      py::arg("instance"), py::arg("policy"), py::arg("explanations"));
  m.def(
      "best_respond",
      [](const Instance& i, std::vector<double> policy,
         std::vector<int> explanations) {
        const BestResponseResult r =
            BestRespond(i, ToPolicy(i, std::move(policy)),
                        ToSet(i, std::move(explanations)));
        py::list moved;
        for (const auto& target : r.moved) {
          moved.append(target ? py::cast(*target) : py::none());
        }
        py::dict out;
        out["moved"] = moved;
        out["induced_px"] = r.induced_px;
        out["utility"] = r.utility;
        return out;
      },
      py::arg("instance"), py::arg("policy"), py::arg("explanations"),
      "Returns {'moved': target or None per value, 'induced_px', 'utility'}.");

  m.def(
      "greedy_fixed_policy",
      [](const Instance& i, std::vector<double> policy, int k) {
        return GreedyFixedPolicy(i, ToPolicy(i, std::move(policy)), k)
            .indices();
      },
      py::arg("instance"), py::arg("policy"), py::arg("k"));
  m.def(
      "optimal_policy",
      [](const Instance& i, std::vector<int> explanations) {
        return Values(OptimalPolicyFor(i, ToSet(i, std::move(explanations))));
      },
      py::arg("instance"), py::arg("explanations"));
  m.def(
      "joint_objective",
      [](const Instance& i, std::vector<int> explanations) {
        return JointObjective(i, ToSet(i, std::move(explanations)));
      },
      py::arg("instance"), py::arg("explanations"));
  m.def(
      "randomized_joint",
      [](const Instance& i, int k, uint64_t seed) {
        RngStream rng(seed);
        return Joint(RandomizedJoint(i, k, rng));
      },
      py::arg("instance"), py::arg("k"), py::arg("seed") = 0,
      "Returns (policy, explanations, utility).");
  m.def(
      "brute_force_joint",
      [](const Instance& i, int k) { return Joint(BruteForceJoint(i, k)); },
      py::arg("instance"), py::arg("k"));
  m.def(
      "greedy_matroid",
      [](const Instance& i, std::vector<double> policy,
         std::vector<std::vector<int>> groups, std::vector<int> capacities) {
        const PartitionMatroid matroid(i.m(), std::move(groups),
                                       std::move(capacities));
        return GreedyMatroid(i, ToPolicy(i, std::move(policy)), matroid)
            .explanations.indices();
      },
      py::arg("instance"), py::arg("policy"), py::arg("groups"),
      py::arg("capacities"));
  m.def(
      "group_improvement",
      [](const Instance& i, std::vector<double> policy,
         std::vector<int> explanations,
         const std::vector<std::vector<int>>& groups) {
        return GroupImprovement(i, ToPolicy(i, std::move(policy)),
                                ToSet(i, std::move(explanations)), groups);
      },
      py::arg("instance"), py::arg("policy"), py::arg("explanations"),
      py::arg("groups"));

  m.def(
      "min_cost_explanations",
      [](const Instance& i, std::vector<double> policy, int k,
         bool swap_refinement) {
        return MinCostExplanations(i, ToPolicy(i, std::move(policy)), k,
                                   {.swap_refinement = swap_refinement})
            .indices();
      },
      py::arg("instance"), py::arg("policy"), py::arg("k"),
      py::arg("swap_refinement") = false);
  m.def(
      "diverse_explanations",
      [](const Instance& i, std::vector<double> policy, int k) {
        return DiverseExplanations(i, ToPolicy(i, std::move(policy)), k)
            .indices();
      },
      py::arg("instance"), py::arg("policy"), py::arg("k"));

  m.def(
      "leakage_utility",
      [](const Instance& i, std::vector<double> policy,
         std::vector<int> explanations, double leak_probability) {
        return LeakageUtility(i, ToPolicy(i, std::move(policy)),
                              ToSet(i, std::move(explanations)),
                              leak_probability);
      },
      py::arg("instance"), py::arg("policy"), py::arg("explanations"),
      py::arg("leak_probability"));
  m.def(
      "leakage_monte_carlo",
      [](const Instance& i, std::vector<double> policy,
         std::vector<int> explanations, double leak_probability,
         int64_t samples, uint64_t seed) {
        RngStream rng(seed);
        const MonteCarloEstimate e = LeakageMonteCarlo(
            i, ToPolicy(i, std::move(policy)),
            ToSet(i, std::move(explanations)), leak_probability, samples, rng);
        return py::make_tuple(e.mean, e.standard_error);
      },
      py::arg("instance"), py::arg("policy"), py::arg("explanations"),
      py::arg("leak_probability"), py::arg("samples") = 100000,
      py::arg("seed") = 0, "Returns (mean, standard_error).");
  m.def(
      "transport_matrix",
      [](const Instance& i, std::vector<double> policy,
         std::vector<int> explanations, int bins) {
        const TransportMatrix t =
            ComputeTransportMatrix(i, ToPolicy(i, std::move(policy)),
                                   ToSet(i, std::move(explanations)), bins);
        std::vector<std::vector<double>> rows(bins, std::vector<double>(bins));
        for (int a = 0; a < bins; ++a) {
          for (int b = 0; b < bins; ++b) rows[a][b] = t.at(a, b);
        }
        return rows;
      },
      py::arg("instance"), py::arg("policy"), py::arg("explanations"),
      py::arg("bins") = 10);

  m.def(
      "run_experiment_json",
      [](const std::string& config) {
        return RunExperiment(ConfigFromJson(nlohmann::json::parse(config)));
      },
      py::arg("config"), "Runs an experiment from a JSON config; returns CSV.");
  m.def("acceptance_criterion_count", &AcceptanceCriterionCount);
  m.def(
      "run_criterion",
      [](int id, uint64_t seed) {
        const CriterionResult r = RunCriterion(id, seed);
        return py::make_tuple(r.passed, FormatCriterion(r));
      },
      py::arg("id"), py::arg("seed") = 0, "Returns (passed, report line).");
}
