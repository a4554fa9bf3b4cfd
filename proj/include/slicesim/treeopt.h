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

#ifndef SLICESIM_TREEOPT_H_
#define SLICESIM_TREEOPT_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "slicesim/tensornet.h"

namespace slicesim {

enum class SliceStrategy {
  /// Slice the leg found in the most over-budget intermediates; ties go to
  /// the leg in the largest intermediate, then the lowest label.
  kMostOverBudget,
};

struct PlannerConfig {
  double memory_budget_bytes = 1ull << 30;
  double initial_temperature = 0.5;
  double cooling = 0.998;
  std::size_t anneal_steps = 2000;
  std::uint64_t seed = 0;
  /// Independent annealing runs with seeds seed, seed+1, ...; the cheapest
  /// plan wins, ties to the lower seed.
  std::size_t restarts = 1;
  /// Keep slicing past the memory requirement until at least this many legs
  /// are sliced. Partial slicing needs sliced legs to choose from.
  std::size_t min_sliced = 0;
  SliceStrategy strategy = SliceStrategy::kMostOverBudget;

  void validate() const;
};

/// Repeatedly joins the pair of connected tensors with the smallest result
/// (then fewest multiplications, then smallest id pair).
ContractionTree greedy_tree(const TensorNetwork& net);

/// Simulated annealing over subtree rotations and leaf transplants with
/// objective log2(total multiplications). Peak memory is a hard constraint:
/// the budget if `start` meets it, otherwise start's own peak. Returns the
/// best tree seen, never one costlier than `start`. The sliced legs of
/// `start` are kept.
ContractionTree anneal_tree(const TensorNetwork& net, const ContractionTree& start,
                            const PlannerConfig& config);

struct SlicingResult {
  std::vector<Label> sliced;
  ContractionTree tree;  // same shape, with `sliced` attached
  ContractionCost cost;
};

/// Adds sliced legs to `tree` until its peak memory fits `budget_bytes` and
/// at least `min_sliced` legs are sliced. Throws MemoryBudgetError when an
/// over-budget tensor has no sliceable leg left.
SlicingResult choose_fully_sliced(const TensorNetwork& net, const ContractionTree& tree,
                                  double budget_bytes, std::size_t min_sliced = 0);

struct ContractionPlan {
  ContractionTree tree;
  ContractionCost cost;
  std::uint64_t seed = 0;
};

/// greedy -> slice to budget -> anneal, best of `restarts` runs.
ContractionPlan plan_contraction(const TensorNetwork& net, const PlannerConfig& config);

/// Picks which `count` outputs stay free in a batch: starts from the last
/// `count` qubits (a contiguous block of the grid) and applies improving
/// free/fixed swaps scored by the sliced greedy contraction cost.
std::vector<int> choose_free_outputs(const Circuit& c, std::size_t count,
                                     const PlannerConfig& config,
                                     const NetworkOptions& options = {});

}  // namespace slicesim

#endif  // SLICESIM_TREEOPT_H_
