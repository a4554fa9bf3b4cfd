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

#include <cmath>
#include <map>

#include "slicesim/circuit.h"
#include "slicesim/errors.h"
#include "slicesim/rng.h"
#include "slicesim/tensornet.h"
#include "slicesim/treeopt.h"
#include "test_util.h"

namespace slicesim {
namespace {

Tensor random_tensor(std::vector<Label> labels, std::uint64_t seed) {
  Tensor t = Tensor::zeros(std::move(labels));
  CounterRng rng(seed, 99);
  for (auto& z : t.data) z = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
  return t;
}

Complex element(const Tensor& t, const std::map<Label, int>& at) {
  std::size_t idx = 0;
  for (Label l : t.labels) idx = (idx << 1) | static_cast<std::size_t>(at.at(l));
  return t.data[idx];
}

TEST(Kernels, PermuteMovesElements) {
  const Tensor t = random_tensor({3, 1, 2}, 1);
  const Tensor p = permute(t, {2, 3, 1});
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) {
        const std::map<Label, int> at{{1, a}, {2, b}, {3, c}};
        EXPECT_EQ(element(t, at), element(p, at));
      }
    }
  }
}

TEST(Kernels, ContractPairMatchesEinsum) {
  // a[1,2,3,5] b[3,2,4,5] -> r[5,1,4]; 2 and 3 summed, 5 kept as batch leg.
  const Tensor a = random_tensor({1, 2, 3, 5}, 2);
  const Tensor b = random_tensor({3, 2, 4, 5}, 3);
  const Tensor r = contract_pair(a, b, {5, 1, 4});
  for (int i5 = 0; i5 < 2; ++i5) {
    for (int i1 = 0; i1 < 2; ++i1) {
      for (int i4 = 0; i4 < 2; ++i4) {
        Complex s = 0.0;
        for (int i2 = 0; i2 < 2; ++i2) {
          for (int i3 = 0; i3 < 2; ++i3) {
            s += element(a, {{1, i1}, {2, i2}, {3, i3}, {5, i5}}) *
                 element(b, {{3, i3}, {2, i2}, {4, i4}, {5, i5}});
          }
        }
        EXPECT_NEAR(std::abs(s - element(r, {{5, i5}, {1, i1}, {4, i4}})), 0.0, 1e-14);
      }
    }
  }
}

TEST(Kernels, FixLabels) {
  const Tensor t = random_tensor({4, 7}, 5);
  const Tensor f = fix_labels(t, {{7, 1}});
  ASSERT_EQ(f.labels, std::vector<Label>{4});
  EXPECT_EQ(f.data[0], t.data[1]);
  EXPECT_EQ(f.data[1], t.data[3]);
}

TEST(OutputSpecs, PatternsAndBitstrings) {
  const OutputSpec s = OutputSpec::from_pattern("0*1*");
  EXPECT_EQ(s.num_free(), 2u);
  EXPECT_EQ(s.free_qubits(), (std::vector<int>{1, 3}));
  EXPECT_EQ(s.bitstring(0), "0010");
  EXPECT_EQ(s.bitstring(2), "0110");
  EXPECT_EQ(s.bitstring(3), "0111");
  EXPECT_EQ(OutputSpec::batch(4, {{0, 0}, {2, 1}}, {1, 3}), s);
  EXPECT_THROW(OutputSpec::batch(4, {{0, 0}}, {1, 3}), InputError);
  EXPECT_THROW(OutputSpec::from_pattern("01x"), InputError);
}

TEST(Network, ContractionMatchesBruteForce) {
  const Circuit c = make_random_circuit({1, 3, 3, 11, true});
  for (const char* pattern : {"000", "101", "*0*", "***"}) {
    const TensorNetwork net = build_network(c, OutputSpec::from_pattern(pattern));
    net.validate();
    const Tensor want = testing::brute_force_contract(net);
    const Tensor got = contract(net, greedy_tree(net), {});
    EXPECT_LT(testing::max_abs_diff(got.data, want.data), 1e-12) << pattern;
  }
}

TEST(Network, MergingDiagonalsDoesNotChangeResult) {
  const Circuit c = make_random_circuit({2, 3, 4, 5, false});
  NetworkOptions split;
  split.merge_diagonal = false;
  const TensorNetwork a = build_network(c, OutputSpec::open_all(6));
  const TensorNetwork b = build_network(c, OutputSpec::open_all(6), split);
  EXPECT_LT(a.max_label(), b.max_label() + 1);
  const Tensor ta = contract(a, greedy_tree(a), {});
  const Tensor tb = contract(b, greedy_tree(b), {});
  EXPECT_LT(testing::max_abs_diff(ta.data, tb.data), 1e-12);
}

TEST(Network, StructureHashIgnoresFixedBits) {
  const Circuit c = make_random_circuit({2, 3, 4, 5, true});
  const auto h0 = build_network(c, OutputSpec::from_pattern("00***0")).structure_hash();
  const auto h1 = build_network(c, OutputSpec::from_pattern("11***1")).structure_hash();
  const auto h2 = build_network(c, OutputSpec::from_pattern("1****1")).structure_hash();
  EXPECT_EQ(h0, h1);
  EXPECT_NE(h0, h2);
}

TEST(Network, BlockBudgetIsEnforced) {
  const Circuit c = make_random_circuit({2, 3, 2, 5, true});
  NetworkOptions o;
  o.memory_budget_bytes = 16.0 * 8;
  EXPECT_NO_THROW(build_network(c, OutputSpec::from_pattern("000***"), o));
  EXPECT_THROW(build_network(c, OutputSpec::from_pattern("00****"), o), MemoryBudgetError);
}

TEST(Network, ValidateRejectsDanglingLabel) {
  TensorNetwork net;
  net.tensors.push_back({{0, 1}, {1.0, 0.0, 0.0, 1.0}});
  net.tensors.push_back({{0}, {1.0, 0.0}});
  EXPECT_THROW(net.validate(), InputError);
  net.open_labels = {1};
  EXPECT_NO_THROW(net.validate());
}

TEST(Trees, CostOfChain) {
  // v0[0] - m[0,1] - w[1]: contracting v0 with m costs 2^2, then with w 2^1.
  TensorNetwork net;
  net.tensors.push_back({{0}, {1.0, 0.0}});
  net.tensors.push_back({{0, 1}, {1.0, 2.0, 3.0, 4.0}});
  net.tensors.push_back({{1}, {1.0, 1.0}});
  const ContractionTree tree(3, {{0, 1}, {3, 2}});
  const ContractionCost cost = contraction_cost(net, tree);
  EXPECT_EQ(cost.multiplications_per_slice, 6.0);
  EXPECT_EQ(cost.slice_count, 1.0);
  EXPECT_EQ(cost.peak_bytes, 64.0);
  const ContractionCost sliced = contraction_cost(net, tree, {1});
  EXPECT_EQ(sliced.slice_count, 2.0);
  EXPECT_EQ(sliced.multiplications_per_slice, 2.0 + 1.0);
  EXPECT_EQ(contract(net, tree, {}).data[0], Complex(1.0 + 2.0));
}

TEST(Trees, ValidateRejectsBadTrees) {
  const Circuit c = make_random_circuit({2, 2, 2, 5, true});
  const TensorNetwork net = build_network(c, OutputSpec::closed("0000"));
  const ContractionTree good = greedy_tree(net);
  EXPECT_NO_THROW(good.validate(net));
  auto steps = good.steps();
  steps.back().second = steps.back().first;
  EXPECT_THROW(ContractionTree(good.num_leaves(), steps).validate(net), InputError);
  EXPECT_THROW(ContractionTree(good.num_leaves() - 1, {}).validate(net), InputError);
  const Label open_free = 1 << 20;
  EXPECT_THROW(ContractionTree(good.num_leaves(), good.steps(), {open_free}).validate(net), InputError);
}

TEST(Slicing, SumOverSlicesEqualsFullContraction) {
  for (const Circuit& c : testing::corpus(4)) {
    std::string pattern(c.num_qubits(), '0');
    for (int q = 0; q < 4; ++q) pattern[c.num_qubits() - 1 - q] = '*';
    const TensorNetwork net = build_network(c, OutputSpec::from_pattern(pattern));
    const ContractionTree plain = greedy_tree(net);
    const Tensor full = contract(net, plain, {});
    const SlicingResult sliced = choose_fully_sliced(net, plain, 16.0 * 256, 6);
    ASSERT_GE(sliced.sliced.size(), 6u);
    const Tensor sum = sliced_contract_sum(net, sliced.tree, {}, {0});
    double norm = 0;
    for (const auto& z : full.data) norm = std::max(norm, std::abs(z));
    EXPECT_LT(testing::max_abs_diff(sum.data, full.data), 1e-10 * norm);

    // Manual enumeration of every assignment.
    Tensor manual = Tensor::zeros(net.open_labels);
    const auto& legs = sliced.tree.sliced();
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << legs.size()); ++a) {
      SliceAssignment asg;
      for (std::size_t k = 0; k < legs.size(); ++k) asg[legs[k]] = static_cast<int>((a >> k) & 1);
      const Tensor part = contract(net, sliced.tree, asg);
      for (std::size_t i = 0; i < part.data.size(); ++i) manual.data[i] += part.data[i];
    }
    EXPECT_LT(testing::max_abs_diff(manual.data, full.data), 1e-10 * norm);
  }
}

TEST(Slicing, PartialIndexSelectsAssignments) {
  const Circuit c = testing::corpus(1)[0];
  const TensorNetwork net = build_network(c, OutputSpec::closed(std::string(c.num_qubits(), '0')));
  const SlicingResult sr = choose_fully_sliced(net, greedy_tree(net), 16.0 * 64, 4);
  const auto& legs = sr.tree.sliced();
  ASSERT_GE(legs.size(), 3u);
  const std::vector<Label> partial{legs[2], legs[0]};
  Complex total = 0.0;
  for (std::uint64_t x = 0; x < 4; ++x) {
    const Tensor one = sliced_contract_sum(net, sr.tree, partial, {x});
    total += one.data[0];
    // Bit 0 (most significant) belongs to the lower label legs[0].
    Complex direct = 0.0;
    const std::size_t rest = legs.size();
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << rest); ++a) {
      SliceAssignment asg;
      for (std::size_t k = 0; k < rest; ++k) asg[legs[k]] = static_cast<int>((a >> k) & 1);
      if (asg[legs[0]] != static_cast<int>(x >> 1) || asg[legs[2]] != static_cast<int>(x & 1)) continue;
      direct += contract(net, sr.tree, asg).data[0];
    }
    EXPECT_LT(std::abs(one.data[0] - direct), 1e-12);
  }
  EXPECT_LT(std::abs(total - contract(net, greedy_tree(net), {}).data[0]), 1e-12);
  EXPECT_THROW(sliced_contract_sum(net, sr.tree, {legs[0]}, {2}), InputError);
}

TEST(Slicing, ThreadCountDoesNotChangeBits) {
  const Circuit c = testing::corpus(2)[1];
  std::string pattern(c.num_qubits(), '0');
  pattern[0] = pattern[5] = '*';
  const TensorNetwork net = build_network(c, OutputSpec::from_pattern(pattern));
  const SlicingResult sr = choose_fully_sliced(net, greedy_tree(net), 16.0 * 64, 8);
  ContractOptions one;
  ContractOptions three;
  three.threads = 3;
  const Tensor a = sliced_contract_sum(net, sr.tree, {}, {0}, one);
  const Tensor b = sliced_contract_sum(net, sr.tree, {}, {0}, three);
  ASSERT_EQ(a.data.size(), b.data.size());
  for (std::size_t i = 0; i < a.data.size(); ++i) EXPECT_EQ(a.data[i], b.data[i]);
}

TEST(Slicing, ContractionRespectsBudget) {
  const Circuit c = testing::corpus(1)[0];
  const TensorNetwork net = build_network(c, OutputSpec::closed(std::string(c.num_qubits(), '0')));
  const SlicingResult sr = choose_fully_sliced(net, greedy_tree(net), 16.0 * 32);
  ContractOptions o;
  o.memory_budget_bytes = 16.0 * 32;
  ContractionStats st;
  sliced_contract_sum(net, sr.tree, {}, {0}, o, &st);
  EXPECT_LE(st.max_allocated_elements, 32u);
  EXPECT_GT(st.pairwise_contractions, 0u);
}

TEST(PlanFile, RoundTrips) {
  const Circuit c = testing::corpus(1)[0];
  const TensorNetwork net = build_network(c, OutputSpec::closed(std::string(c.num_qubits(), '1')));
  const ContractionPlan p = plan_contraction(net, testing::small_planner(3));
  const std::string text = format_plan(net, p.tree);
  const ParsedPlan parsed = parse_plan(text);
  EXPECT_EQ(parsed.network_hash, net.structure_hash());
  EXPECT_EQ(parsed.tree, p.tree);
  EXPECT_EQ(format_plan(net, parsed.tree), text);
  EXPECT_THROW(parse_plan("slicesim-plan 2\n"), InputError);
}

}  // namespace
}  // namespace slicesim
