// Copyright 2026 The slicesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <functional>
#include <limits>

#include "slicesim/circuit.h"
#include "slicesim/errors.h"
#include "slicesim/tensornet.h"
#include "slicesim/treeopt.h"
#include "test_util.h"

namespace slicesim {
namespace {

// Every binary contraction tree over the given leaves, as link arrays.
double best_total_over_all_trees(const TensorNetwork& net) {
  const std::size_t n = net.tensors.size();
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> left(2 * n - 1, -1), right(2 * n - 1, -1);
  std::function<void(std::vector<int>, int)> rec = [&](std::vector<int> roots, int next) {
    if (roots.size() == 1) {
      const ContractionTree t = ContractionTree::from_links(n, left, right, roots[0]);
      best = std::min(best, contraction_cost(net, t).total_multiplications());
      return;
    }
    for (std::size_t i = 0; i < roots.size(); ++i) {
      for (std::size_t j = i + 1; j < roots.size(); ++j) {
        std::vector<int> rest;
        for (std::size_t k = 0; k < roots.size(); ++k) {
          if (k != i && k != j) rest.push_back(roots[k]);
        }
        left[next] = roots[i];
        right[next] = roots[j];
        rest.push_back(next);
        rec(rest, next + 1);
      }
    }
  };
  std::vector<int> leaves(n);
  for (std::size_t i = 0; i < n; ++i) leaves[i] = static_cast<int>(i);
  rec(leaves, static_cast<int>(n));
  return best;
}

TensorNetwork tiny_network() {
  const Circuit c = parse_circuit("2\n0 h 0\n0 h 1\n1 fsim(0.4,0.2) 0 1\n");
  return build_network(c, OutputSpec::closed("01"));
}

TEST(Greedy, ValidAndDeterministic) {
  for (const Circuit& c : testing::corpus(3)) {
    const TensorNetwork net = build_network(c, OutputSpec::closed(std::string(c.num_qubits(), '0')));
    const ContractionTree a = greedy_tree(net);
    EXPECT_NO_THROW(a.validate(net));
    EXPECT_EQ(a, greedy_tree(net));
  }
}

TEST(Greedy, NeverBeatsExhaustiveOptimum) {
  const TensorNetwork net = tiny_network();
  ASSERT_LE(net.tensors.size(), 8u);
  const double optimum = best_total_over_all_trees(net);
  EXPECT_GE(contraction_cost(net, greedy_tree(net)).total_multiplications(), optimum);
  PlannerConfig cfg;
  cfg.anneal_steps = 4000;
  const ContractionTree annealed = anneal_tree(net, greedy_tree(net), cfg);
  const double got = contraction_cost(net, annealed).total_multiplications();
  EXPECT_GE(got, optimum);
  EXPECT_LE(got, contraction_cost(net, greedy_tree(net)).total_multiplications());
}

TEST(Anneal, NoWorseThanStartAndReproducible) {
  const Circuit c = testing::corpus(2)[1];
  const TensorNetwork net = build_network(c, OutputSpec::closed(std::string(c.num_qubits(), '0')));
  const ContractionTree start = greedy_tree(net);
  PlannerConfig cfg;
  cfg.anneal_steps = 500;
  cfg.seed = 17;
  const ContractionTree a = anneal_tree(net, start, cfg);
  EXPECT_EQ(a, anneal_tree(net, start, cfg));
  EXPECT_NO_THROW(a.validate(net));
  EXPECT_LE(contraction_cost(net, a).total_multiplications(),
            contraction_cost(net, start).total_multiplications());
}

TEST(Anneal, KeepsSlicedLegsAndBudget) {
  const Circuit c = testing::corpus(1)[0];
  const TensorNetwork net = build_network(c, OutputSpec::closed(std::string(c.num_qubits(), '0')));
  const SlicingResult sr = choose_fully_sliced(net, greedy_tree(net), 16.0 * 64);
  PlannerConfig cfg;
  cfg.memory_budget_bytes = 16.0 * 64;
  cfg.anneal_steps = 400;
  const ContractionTree a = anneal_tree(net, sr.tree, cfg);
  EXPECT_EQ(a.sliced(), sr.tree.sliced());
  EXPECT_LE(contraction_cost(net, a).peak_bytes, 16.0 * 64);
}

TEST(Slicing, MeetsBudgetAndFloor) {
  const Circuit c = testing::corpus(3)[2];
  const TensorNetwork net = build_network(c, OutputSpec::closed(std::string(c.num_qubits(), '0')));
  const ContractionTree g = greedy_tree(net);
  for (double budget : {16.0 * 16, 16.0 * 64, 16.0 * 1024}) {
    const SlicingResult sr = choose_fully_sliced(net, g, budget);
    EXPECT_LE(sr.cost.peak_bytes, budget);
    EXPECT_EQ(sr.cost.slice_count, std::ldexp(1.0, static_cast<int>(sr.sliced.size())));
  }
  const SlicingResult floor = choose_fully_sliced(net, g, 1e12, 5);
  EXPECT_EQ(floor.sliced.size(), 5u);
  const TensorNetwork open = build_network(c, OutputSpec::open_all(c.num_qubits()));
  EXPECT_THROW(choose_fully_sliced(open, greedy_tree(open), 16.0 * 4), MemoryBudgetError);
  for (Label l : floor.sliced) EXPECT_FALSE(net.is_open(l));
}

TEST(Slicing, DeterministicChoice) {
  const Circuit c = testing::corpus(1)[0];
  const TensorNetwork net = build_network(c, OutputSpec::closed(std::string(c.num_qubits(), '0')));
  const auto a = choose_fully_sliced(net, greedy_tree(net), 16.0 * 32, 2);
  const auto b = choose_fully_sliced(net, greedy_tree(net), 16.0 * 32, 2);
  EXPECT_EQ(a.sliced, b.sliced);
}

TEST(Planner, PlanIsValidAndSeeded) {
  const Circuit c = testing::corpus(2)[1];
  const TensorNetwork net = build_network(c, OutputSpec::from_pattern(
                                                 std::string(c.num_qubits() - 3, '0') + "***"));
  PlannerConfig cfg = testing::small_planner(6, 3);
  cfg.restarts = 2;
  const ContractionPlan a = plan_contraction(net, cfg);
  const ContractionPlan b = plan_contraction(net, cfg);
  EXPECT_EQ(a.tree, b.tree);
  EXPECT_NO_THROW(a.tree.validate(net));
  EXPECT_GE(a.tree.sliced().size(), 6u);
  EXPECT_LE(a.cost.peak_bytes, cfg.memory_budget_bytes);
  EXPECT_EQ(format_plan(net, a.tree), format_plan(net, b.tree));
}

TEST(Planner, ConfigValidation) {
  PlannerConfig cfg;
  cfg.cooling = 1.0;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = PlannerConfig{};
  cfg.memory_budget_bytes = 0;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = PlannerConfig{};
  cfg.restarts = 0;
  EXPECT_THROW(cfg.validate(), InputError);
}

TEST(FreeOutputs, DistinctAndDeterministic) {
  const Circuit c = testing::corpus(2)[1];
  const PlannerConfig cfg = testing::small_planner(0);
  const auto a = choose_free_outputs(c, 4, cfg);
  EXPECT_EQ(a, choose_free_outputs(c, 4, cfg));
  ASSERT_EQ(a.size(), 4u);
  for (std::size_t i = 1; i < a.size(); ++i) EXPECT_LT(a[i - 1], a[i]);
  EXPECT_THROW(choose_free_outputs(c, 99, cfg), InputError);
}

}  // namespace
}  // namespace slicesim
