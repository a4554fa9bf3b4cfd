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

#include "slicesim/oracle.h"

#include <algorithm>
#include <cmath>

#include "slicesim/errors.h"
#include "slicesim/rng.h"

namespace slicesim {

namespace {

void check_cap(int n, int cap) {
  if (n > cap) {
    throw InputError("dense simulation of " + std::to_string(n) + " qubits exceeds the cap of " +
                     std::to_string(cap));
  }
}

StateVector zero_state(int n) {
  StateVector s;
  s.num_qubits = n;
  s.amplitudes.assign(std::size_t{1} << n, Complex(0.0, 0.0));
  s.amplitudes[0] = 1.0;
  return s;
}

void project(StateVector& state, int qubit, int bit) {
  const std::size_t mask = std::size_t{1} << (state.num_qubits - 1 - qubit);
  for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
    if (((i & mask) != 0) != (bit != 0)) state.amplitudes[i] = 0.0;
  }
}

}  // namespace

double StateVector::norm() const {
  double s = 0;
  for (const Complex& z : amplitudes) s += std::norm(z);
  return std::sqrt(s);
}

std::string index_to_bitstring(std::uint64_t index, int num_qubits) {
  std::string s(num_qubits, '0');
  for (int q = 0; q < num_qubits; ++q) {
    if ((index >> (num_qubits - 1 - q)) & 1) s[q] = '1';
  }
  return s;
}

std::uint64_t bitstring_to_index(std::string_view bits) {
  if (bits.size() > 63) throw InputError("bitstring too long");
  std::uint64_t index = 0;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw InputError("not a bitstring: " + std::string(bits));
    index = (index << 1) | static_cast<std::uint64_t>(ch == '1');
  }
  return index;
}

void apply_gate(StateVector& state, const Gate& gate) {
  const int n = state.num_qubits;
  auto& a = state.amplitudes;
  const auto& m = gate.matrix;
  if (gate.arity() == 1) {
    const std::size_t mask = std::size_t{1} << (n - 1 - gate.qubits[0]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i & mask) continue;
      const Complex x0 = a[i];
      const Complex x1 = a[i | mask];
      a[i] = m[0] * x0 + m[1] * x1;
      a[i | mask] = m[2] * x0 + m[3] * x1;
    }
    return;
  }
  const std::size_t hi = std::size_t{1} << (n - 1 - gate.qubits[0]);
  const std::size_t lo = std::size_t{1} << (n - 1 - gate.qubits[1]);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((i & hi) || (i & lo)) continue;
    const std::size_t idx[4] = {i, i | lo, i | hi, i | hi | lo};
    Complex x[4];
    for (int r = 0; r < 4; ++r) x[r] = a[idx[r]];
    for (int r = 0; r < 4; ++r) {
      a[idx[r]] = m[4 * r] * x[0] + m[4 * r + 1] * x[1] + m[4 * r + 2] * x[2] + m[4 * r + 3] * x[3];
    }
  }
}

StateVector statevector(const Circuit& c, int cap) {
  check_cap(c.num_qubits(), cap);
  StateVector s = zero_state(c.num_qubits());
  for (const Gate& g : c.gates()) apply_gate(s, g);
  return s;
}

StateVector projected_statevector(const Circuit& c, const VertexSet& partial, std::uint64_t index,
                                  int cap) {
  check_cap(c.num_qubits(), cap);
  const std::size_t k = partial.size();
  // projections[q][slot] = bit to project on, or -1.
  std::vector<std::vector<int>> projections(c.num_qubits());
  for (int q = 0; q < c.num_qubits(); ++q) projections[q].assign(c.wire_length(q) + 1, -1);
  for (std::size_t j = 0; j < k; ++j) {
    const VertexCoords at = c.coords(partial[j]);
    projections[at.qubit][at.slot] = static_cast<int>((index >> (k - 1 - j)) & 1);
  }
  StateVector s = zero_state(c.num_qubits());
  std::vector<int> slot(c.num_qubits(), 0);
  for (int q = 0; q < c.num_qubits(); ++q) {
    if (projections[q][0] >= 0) project(s, q, projections[q][0]);
  }
  for (const Gate& g : c.gates()) {
    apply_gate(s, g);
    for (int q : g.qubits) {
      const int bit = projections[q][++slot[q]];
      if (bit >= 0) project(s, q, bit);
    }
  }
  return s;
}

NormTable exact_slice_norms(const Circuit& c, const VertexSet& partial, int cap) {
  const Circuit c1 = subcircuit(c, lightcone(c, partial));
  const StateVector s = statevector(c1, cap);
  const std::size_t k = partial.size();
  std::vector<std::size_t> masks;
  for (VertexId v : partial) {
    const VertexCoords at = c.coords(v);
    if (at.slot != c1.wire_length(at.qubit)) {
      throw InputError("partially sliced vertex is not an output of its lightcone");
    }
    masks.push_back(std::size_t{1} << (c.num_qubits() - 1 - at.qubit));
  }
  NormTable table;
  table.partial = partial;
  table.values.assign(std::size_t{1} << k, 0.0);
  for (std::size_t i = 0; i < s.amplitudes.size(); ++i) {
    std::size_t r = 0;
    for (std::size_t j = 0; j < k; ++j) r = (r << 1) | ((i & masks[j]) ? 1 : 0);
    table.values[r] += std::norm(s.amplitudes[i]);
  }
  return table;
}

std::vector<double> exact_distribution(const Circuit& c, int cap) {
  const StateVector s = statevector(c, cap);
  std::vector<double> p(s.amplitudes.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(s.amplitudes[i]);
  return p;
}

std::vector<double> exact_probabilities(const Circuit& c, const std::vector<std::string>& bitstrings,
                                        int cap) {
  const std::vector<double> p = exact_distribution(c, cap);
  std::vector<double> out;
  out.reserve(bitstrings.size());
  for (const auto& b : bitstrings) {
    if (static_cast<int>(b.size()) != c.num_qubits()) {
      throw InputError("bitstring length " + std::to_string(b.size()) + " differs from qubit count");
    }
    out.push_back(p[bitstring_to_index(b)]);
  }
  return out;
}

std::vector<std::string> exact_sample(const Circuit& c, std::size_t count, std::uint64_t seed,
                                      int cap) {
  const std::vector<double> p = exact_distribution(c, cap);
  std::vector<double> cdf(p.size());
  double acc = 0;
  for (std::size_t i = 0; i < p.size(); ++i) cdf[i] = (acc += p[i]);
  CounterRng rng = make_rng(seed, RngStream::kOracleSampling);
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    out.push_back(index_to_bitstring(static_cast<std::uint64_t>(it - cdf.begin()), c.num_qubits()));
  }
  return out;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.amplitudes.size() != b.amplitudes.size()) throw InputError("state sizes differ");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i) s += std::conj(a.amplitudes[i]) * b.amplitudes[i];
  return s;
}

}  // namespace slicesim
