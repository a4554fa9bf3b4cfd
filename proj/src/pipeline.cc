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

#include "slicesim/pipeline.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "slicesim/errors.h"

namespace slicesim {

OutputSpec BatchPipeline::batch_spec(std::uint64_t j) const {
  if (j >= layout.batch_count()) throw InputError("batch index out of range");
  const auto& b = layout.fixed_qubits();
  std::map<int, int> fixed;
  for (std::size_t k = 0; k < b.size(); ++k) {
    fixed[b[k]] = static_cast<int>((j >> (b.size() - 1 - k)) & 1);
  }
  return OutputSpec::batch(circuit.num_qubits(), fixed, layout.batch_qubits());
}

TensorNetwork BatchPipeline::batch_network(std::uint64_t j) const {
  return build_network(circuit, batch_spec(j), network_options);
}

AmplitudeBatch BatchPipeline::amplitudes(std::uint64_t j, const ContractOptions& contract) const {
  const OutputSpec spec = batch_spec(j);
  const TensorNetwork net = build_network(circuit, spec, network_options);
  if (net.structure_hash() != network_hash) throw InvariantError("batch network changed shape");
  if (slices) return partial_amplitudes(*slices, spec, net, plan.tree, contract);
  Tensor t = sliced_contract_sum(net, plan.tree, {}, {0}, contract);
  return AmplitudeBatch{spec, std::move(t.data)};
}

BatchProvider BatchPipeline::provider(const ContractOptions& contract) const {
  return [this, contract](std::uint64_t j) {
    const AmplitudeBatch batch = amplitudes(j, contract);
    std::vector<double> p(batch.amplitudes.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(batch.amplitudes[i]);
    return p;
  };
}

BatchPipeline make_batch_pipeline(const Circuit& c, const BatchPipelineOptions& options,
                                  const PlannerConfig& planner, const NetworkOptions& network) {
  if (options.batch_qubits > static_cast<std::size_t>(c.num_qubits())) {
    throw InputError("batch size exceeds the register");
  }
  BatchPipeline p;
  p.circuit = c;
  p.network_options = network;
  const std::vector<int> free = options.batch_qubit_choice
                                    ? *options.batch_qubit_choice
                                    : choose_free_outputs(c, options.batch_qubits, planner, network);
  p.layout = BatchLayout(c.num_qubits(), free);
  const TensorNetwork net = p.batch_network(0);
  p.network_hash = net.structure_hash();
  p.plan = plan_contraction(net, planner);
  if (options.target_fidelity < 1.0 || options.partial_count) {
    const VertexSet sliced = sliced_vertices(net, p.plan.tree);
    if (sliced.empty()) {
      throw InputError("partial slicing needs sliced legs; raise the minimum sliced count");
    }
    p.slices = select_partial_slices(c, sliced, options.target_fidelity, planner,
                                     options.partial_count, network);
  }
  // I only feeds the choice of S; execution slices S plus what memory needs.
  p.plan.tree = execution_tree(net, p.plan.tree, p.slices ? p.slices->partial : VertexSet{},
                               planner.memory_budget_bytes);
  p.plan.cost = contraction_cost(net, p.plan.tree);
  return p;
}

}  // namespace slicesim
