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

#ifndef SLICESIM_PIPELINE_H_
#define SLICESIM_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "slicesim/circuit.h"
#include "slicesim/fidelity.h"
#include "slicesim/sampler.h"
#include "slicesim/tensornet.h"
#include "slicesim/treeopt.h"

namespace slicesim {

/// Everything needed to evaluate batches of one circuit: the A/B split, one
/// contraction plan shared by all batches, and an optional slice plan.
struct BatchPipeline {
  Circuit circuit;
  BatchLayout layout;
  NetworkOptions network_options;
  ContractionPlan plan;
  std::uint64_t network_hash = 0;
  std::optional<SlicePlan> slices;

  double fidelity() const { return slices ? slices->achieved : 1.0; }
  OutputSpec batch_spec(std::uint64_t j) const;
  TensorNetwork batch_network(std::uint64_t j) const;
  /// Normalized amplitudes of batch j, indexed by the A part.
  AmplitudeBatch amplitudes(std::uint64_t j, const ContractOptions& contract = {}) const;
  BatchProvider provider(const ContractOptions& contract = {}) const;
};

struct BatchPipelineOptions {
  std::size_t batch_qubits = 6;             // |A|
  double target_fidelity = 1.0;             // f; 1 disables partial slicing
  std::optional<std::size_t> partial_count; // overrides k0
  std::optional<std::vector<int>> batch_qubit_choice;  // skip the cost-model search
};

BatchPipeline make_batch_pipeline(const Circuit& c, const BatchPipelineOptions& options,
                                  const PlannerConfig& planner,
                                  const NetworkOptions& network = {});

}  // namespace slicesim

#endif  // SLICESIM_PIPELINE_H_
