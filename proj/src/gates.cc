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

#include "slicesim/gates.h"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace slicesim {
namespace {

constexpr std::array<GateInfo, 10> kGates = {{
    {GateKind::kH, "h", 1, 0},
    {GateKind::kX, "x", 1, 0},
    {GateKind::kX12, "x_1_2", 1, 0},
    {GateKind::kY12, "y_1_2", 1, 0},
    {GateKind::kHz12, "hz_1_2", 1, 0},
    {GateKind::kRz, "rz", 1, 1},
    {GateKind::kCz, "cz", 2, 0},
    {GateKind::kFsim, "fsim", 2, 2},
    {GateKind::kU1, "u1", 1, 8},
    {GateKind::kU2, "u2", 2, 32},
}};

}  // namespace

const GateInfo* find_gate(std::string_view name) {
  for (const auto& info : kGates) {
    if (info.name == name) return &info;
  }
  return nullptr;
}

const GateInfo& gate_info(GateKind kind) {
  for (const auto& info : kGates) {
    if (info.kind == kind) return info;
  }
  throw std::logic_error("unregistered gate kind");
}

std::vector<Complex> gate_matrix(GateKind kind, const std::vector<double>& params) {
  const double s = 1.0 / std::numbers::sqrt2;
  const Complex i1(0.0, 1.0);
  switch (kind) {
    case GateKind::kH:
      return {s, s, s, -s};
    case GateKind::kX:
      return {0.0, 1.0, 1.0, 0.0};
    case GateKind::kX12:
      return {Complex(0.5, 0.5), Complex(0.5, -0.5), Complex(0.5, -0.5), Complex(0.5, 0.5)};
    case GateKind::kY12:
      return {Complex(0.5, 0.5), Complex(-0.5, -0.5), Complex(0.5, 0.5), Complex(0.5, 0.5)};
    case GateKind::kHz12:
      return {Complex(0.5, 0.5), Complex(0.0, -s), Complex(s, 0.0), Complex(0.5, 0.5)};
    case GateKind::kRz: {
      const double half = params.at(0) / 2.0;
      return {std::exp(-i1 * half), 0.0, 0.0, std::exp(i1 * half)};
    }
    case GateKind::kCz:
      return {1.0, 0.0, 0.0, 0.0,  //
              0.0, 1.0, 0.0, 0.0,  //
              0.0, 0.0, 1.0, 0.0,  //
              0.0, 0.0, 0.0, -1.0};
    case GateKind::kFsim: {
      const double theta = params.at(0);
      const double phi = params.at(1);
      const Complex c = std::cos(theta);
      const Complex x = -i1 * std::sin(theta);
      return {1.0, 0.0, 0.0, 0.0,  //
              0.0, c, x, 0.0,      //
              0.0, x, c, 0.0,      //
              0.0, 0.0, 0.0, std::exp(-i1 * phi)};
    }
    case GateKind::kU1:
    case GateKind::kU2: {
      std::vector<Complex> m(params.size() / 2);
      for (std::size_t k = 0; k < m.size(); ++k) {
        m[k] = Complex(params[2 * k], params[2 * k + 1]);
      }
      return m;
    }
  }
  throw std::logic_error("unhandled gate kind");
}

double unitarity_error(const std::vector<Complex>& matrix, int dim) {
  double worst = 0.0;
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      Complex acc = 0.0;
      for (int k = 0; k < dim; ++k) {
        acc += std::conj(matrix[k * dim + r]) * matrix[k * dim + c];
      }
      if (r == c) acc -= 1.0;
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

bool is_diagonal(const std::vector<Complex>& matrix, int dim) {
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      if (r != c && matrix[r * dim + c] != Complex(0.0)) return false;
    }
  }
  return true;
}

}  // namespace slicesim
