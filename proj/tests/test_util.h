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

#ifndef SLICESIM_TESTS_TEST_UTIL_H_
#define SLICESIM_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <string>
#include <vector>

#include "slicesim/circuit.h"
#include "slicesim/tensornet.h"
#include "slicesim/treeopt.h"

namespace slicesim::testing {

/// Seeded grid circuits with 10 to 14 qubits and 6 to 10 cycles.
std::vector<Circuit> corpus(std::size_t count = 20);

/// Dense einsum by enumerating every label assignment. Small networks only.
Tensor brute_force_contract(const TensorNetwork& net);

/// Gates a vertex set depends on, by walking moments backwards.
std::vector<std::size_t> reference_lightcone(const Circuit& c, const VertexSet& s);
VertexSet reference_lightcone_inputs(const Circuit& c, const VertexSet& s);

/// Step-by-step greedy sliced-vertex selection written without the library
/// lightcone helpers.
VertexSet reference_sliced_vertex_select(const Circuit& c, const VertexSet& sliced, std::size_t k);

/// Planner settings for desk-scale circuits: small budget, a floor on
/// sliced legs, short annealing.
PlannerConfig small_planner(std::size_t min_sliced = 10, std::uint64_t seed = 1);

/// Circuit text helpers.
Circuit one_qubit_circuit(const std::string& gate);

double max_abs_diff(const std::vector<Complex>& a, const std::vector<Complex>& b);

}  // namespace slicesim::testing

#endif  // SLICESIM_TESTS_TEST_UTIL_H_
