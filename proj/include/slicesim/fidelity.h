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

#ifndef SLICESIM_FIDELITY_H_
#define SLICESIM_FIDELITY_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slicesim/circuit.h"
#include "slicesim/tensornet.h"
#include "slicesim/treeopt.h"

namespace slicesim {

/// R[i] = ||psi_i||^2 for every assignment i of the partially sliced
/// vertices. Bit j of i (counting from the most significant) belongs to the
/// j-th vertex of `partial` in ascending id order.
struct NormTable {
  VertexSet partial;
  std::vector<double> values;

  std::size_t k() const { return partial.size(); }
};

/// Outcome of slice selection.
struct SlicePlan {
  VertexSet sliced;                     // I
  VertexSet partial;                    // S, a subset of I
  std::vector<std::uint64_t> accepted;  // X, by descending norm, ties by index
  NormTable norms;
  double achieved = 0;  // F = sum of R over X
  double target = 1;    // f

  std::size_t k() const { return partial.size(); }
};

/// Doubled network C1 / C1* over the lightcone of `partial`. Non-partial
/// outputs of C1 are joined to their conjugates; each partial vertex meets
/// its conjugate in a rank-3 copy tensor whose third leg is left open.
struct NormNetwork {
  TensorNetwork network;
  Circuit lightcone_circuit;        // C1
  std::vector<Label> index_labels;  // open legs, in `partial` order
};

NormNetwork build_norm_network(const Circuit& c, const VertexSet& partial,
                               const NetworkOptions& options = {});

/// Contracts the norm network once to get all 2^k norms. Imaginary residue
/// below 1e-9 and negative values above -1e-12 are dropped; anything larger,
/// or a total further than 1e-6 from 1, raises InvariantError.
NormTable compute_norms(const Circuit& c, const VertexSet& partial, const PlannerConfig& planner,
                        const NetworkOptions& options = {});

/// Greedy choice of up to k sliced vertices with pairwise disjoint
/// lightcones, each step taking the candidate that keeps the lightcone input
/// set smallest (ties to the lowest id). A new vertex evicts chosen vertices
/// inside its lightcone.
VertexSet sliced_vertex_select(const Circuit& c, const VertexSet& sliced, std::size_t k);

/// k0 = ceil(3 - log2 f).
std::size_t default_partial_count(double target_fidelity);

/// Orders R descending (ties by index) and keeps the shortest prefix whose
/// mass reaches `target`.
SlicePlan plan_from_norms(const VertexSet& sliced, NormTable norms, double target);

SlicePlan select_partial_slices(const Circuit& c, const VertexSet& sliced, double target,
                                const PlannerConfig& planner,
                                std::optional<std::size_t> k_override = std::nullopt,
                                const NetworkOptions& options = {});

/// Sliced vertices of a plan, as circuit vertices.
VertexSet sliced_vertices(const TensorNetwork& net, const ContractionTree& tree);

/// Components of psi_X / ||psi_X|| selected by the network's output spec.
/// `tree` must slice every vertex of plan.partial.
/// Same contraction order as `tree`, slicing only the partial vertices plus
/// the legs the memory budget requires.
ContractionTree execution_tree(const TensorNetwork& net, const ContractionTree& tree,
                               const VertexSet& partial, double budget_bytes);

AmplitudeBatch partial_amplitudes(const SlicePlan& plan, const OutputSpec& spec,
                                  const TensorNetwork& net, const ContractionTree& tree,
                                  const ContractOptions& options = {});

/// |X| / 2^k, a lower bound on the achieved fidelity.
double fidelity_lower_bound(const SlicePlan& plan);

/// (|X| / 2^k) * full_cost, checked against (f + 2^-k) * full_cost.
double cost_with_fidelity(double full_cost, const SlicePlan& plan);

std::string format_slice_plan(const SlicePlan& plan);
SlicePlan parse_slice_plan(std::string_view text);
/// One "<k-bit binary index> <norm>" line per entry.
std::string format_norm_table(const NormTable& table);

}  // namespace slicesim

#endif  // SLICESIM_FIDELITY_H_
