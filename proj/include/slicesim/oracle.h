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

#ifndef SLICESIM_ORACLE_H_
#define SLICESIM_ORACLE_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "slicesim/circuit.h"
#include "slicesim/fidelity.h"

namespace slicesim {

inline constexpr int kDefaultOracleCap = 24;

/// Dense state; qubit 0 is the most significant bit of the index.
struct StateVector {
  int num_qubits = 0;
  std::vector<Complex> amplitudes;

  double norm() const;
};

std::string index_to_bitstring(std::uint64_t index, int num_qubits);
std::uint64_t bitstring_to_index(std::string_view bits);

/// Applies one gate in place.
void apply_gate(StateVector& state, const Gate& gate);

StateVector statevector(const Circuit& c, int cap = kDefaultOracleCap);

/// C|0> with each vertex of `partial` projected onto the matching bit of
/// `index` (most significant bit for the lowest vertex id) right after it is
/// produced. The result is the unnormalized slice state psi_index.
StateVector projected_statevector(const Circuit& c, const VertexSet& partial, std::uint64_t index,
                                  int cap = kDefaultOracleCap);

/// Marginal distribution of the partial vertices after the lightcone circuit.
NormTable exact_slice_norms(const Circuit& c, const VertexSet& partial,
                            int cap = kDefaultOracleCap);

std::vector<double> exact_distribution(const Circuit& c, int cap = kDefaultOracleCap);
std::vector<double> exact_probabilities(const Circuit& c, const std::vector<std::string>& bitstrings,
                                        int cap = kDefaultOracleCap);
/// Inverse-CDF sampling from the dense distribution.
std::vector<std::string> exact_sample(const Circuit& c, std::size_t count, std::uint64_t seed,
                                      int cap = kDefaultOracleCap);

Complex inner_product(const StateVector& a, const StateVector& b);

}  // namespace slicesim

#endif  // SLICESIM_ORACLE_H_
