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

#ifndef SLICESIM_GATES_H_
#define SLICESIM_GATES_H_

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace slicesim {

using Complex = std::complex<double>;

enum class GateKind {
  kH,
  kX,
  kX12,   // sqrt(X)
  kY12,   // sqrt(Y)
  kHz12,  // sqrt(W), W = (X + Y) / sqrt(2)
  kRz,
  kCz,
  kFsim,
  kU1,  // explicit 2x2 matrix
  kU2,  // explicit 4x4 matrix
};

struct GateInfo {
  GateKind kind;
  std::string_view name;
  int arity;        // number of qubits
  int num_params;   // real parameters inside the parentheses
};

/// Looks up a gate by its file name ("h", "fsim", ...). Returns nullptr for
/// unknown names.
const GateInfo* find_gate(std::string_view name);
const GateInfo& gate_info(GateKind kind);

/// Row-major dim x dim unitary. For two-qubit gates the basis index is
/// 2 * bit(first qubit) + bit(second qubit).
std::vector<Complex> gate_matrix(GateKind kind, const std::vector<double>& params);

/// max_ij |(M^dagger M - I)_ij|
double unitarity_error(const std::vector<Complex>& matrix, int dim);

bool is_diagonal(const std::vector<Complex>& matrix, int dim);

}  // namespace slicesim

#endif  // SLICESIM_GATES_H_
