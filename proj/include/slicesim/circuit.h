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

#ifndef SLICESIM_CIRCUIT_H_
#define SLICESIM_CIRCUIT_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slicesim/gates.h"

namespace slicesim {

/// A tensor leg of the circuit: the wire of `qubit` after `slot` gates have
/// acted on it. Ids are assigned row-major over (qubit, slot).
struct VertexId {
  std::uint32_t value = 0;
  auto operator<=>(const VertexId&) const = default;
};

struct VertexCoords {
  int qubit = 0;
  int slot = 0;
  auto operator<=>(const VertexCoords&) const = default;
};

/// Sorted, duplicate-free set of vertices. Iteration order is ascending id,
/// which fixes every downstream bit layout.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<VertexId> ids);
  explicit VertexSet(std::vector<VertexId> ids);

  bool contains(VertexId v) const;
  void insert(VertexId v);
  void erase(VertexId v);
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }
  VertexId operator[](std::size_t k) const { return ids_[k]; }
  const std::vector<VertexId>& ids() const { return ids_; }

  VertexSet united(const VertexSet& other) const;
  VertexSet minus(const VertexSet& other) const;

  bool operator==(const VertexSet&) const = default;

 private:
  std::vector<VertexId> ids_;
};

struct Gate {
  std::size_t index = 0;   // position in the circuit's gate list
  int moment = 0;
  GateKind kind = GateKind::kH;
  std::vector<double> params;
  std::vector<int> qubits;  // 1 or 2 distinct qubits
  std::vector<Complex> matrix;

  int arity() const { return static_cast<int>(qubits.size()); }
  int dim() const { return 1 << arity(); }
};

/// Sorted list of gate indices.
using GateSet = std::vector<std::size_t>;

class Circuit {
 public:
  Circuit() = default;
  /// Gates are kept in the given order and re-indexed 0..size-1.
  Circuit(int num_qubits, std::vector<Gate> gates);

  int num_qubits() const { return num_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const Gate& gate(std::size_t g) const { return gates_.at(g); }

  std::size_t num_vertices() const { return num_vertices_; }
  /// Number of gates acting on `qubit`; its vertices are slots 0..wire_length.
  int wire_length(int qubit) const { return wire_length_.at(qubit); }

  VertexId vertex(int qubit, int slot) const;
  VertexCoords coords(VertexId v) const;
  bool has_vertex(VertexId v) const { return v.value < num_vertices_; }

  VertexId input_vertex(int qubit) const { return vertex(qubit, 0); }
  VertexId output_vertex(int qubit) const { return vertex(qubit, wire_length(qubit)); }
  bool is_input(VertexId v) const { return coords(v).slot == 0; }
  bool is_output(VertexId v) const;
  VertexSet outputs() const;

  /// Gate whose output leg is v, if any.
  std::optional<std::size_t> producer(VertexId v) const;
  /// Gate whose input leg is v, if any.
  std::optional<std::size_t> consumer(VertexId v) const;

  /// Input legs of gate g, in the order of gate.qubits.
  std::vector<VertexId> gate_inputs(std::size_t g) const;
  std::vector<VertexId> gate_outputs(std::size_t g) const;

  std::size_t num_moments() const;

 private:
  int num_qubits_ = 0;
  std::vector<Gate> gates_;
  std::vector<int> wire_length_;
  std::vector<std::uint32_t> row_offset_;
  // slot_[g][k]: slot of gates_[g].qubits[k] before g acts.
  std::vector<std::vector<int>> slot_;
  // per qubit, per slot (1-based), the producing gate.
  std::vector<std::vector<std::size_t>> wire_gates_;
  std::uint32_t num_vertices_ = 0;
};

/// Parses the line-based circuit format:
///   line 1: qubit count
///   then:   <moment> <gate>[(<angle>,...)] <qubit> [<qubit>]
/// '#' starts a comment. Gates are ordered by moment (stable within a moment)
/// and gates sharing a moment must act on disjoint qubits.
Circuit parse_circuit(std::string_view text);
Circuit read_circuit_file(const std::string& path);
std::string format_circuit(const Circuit& c);

/// L_C(S): every gate some vertex of S depends on.
GateSet lightcone(const Circuit& c, const VertexSet& s);
/// L'_C(S): all input legs of the gates in L_C(S).
VertexSet lightcone_inputs(const Circuit& c, const VertexSet& s);
/// The circuit made of a dependency-closed gate subset, over the same qubits.
/// Since a closed set is a prefix of every wire, vertex coordinates carry over.
Circuit subcircuit(const Circuit& c, const GateSet& gates);

struct RandomCircuitOptions {
  int rows = 3;
  int cols = 4;
  int cycles = 8;
  std::uint64_t seed = 0;
  bool use_fsim = true;  // fsim(pi/2, pi/6) couplers; otherwise cz
};

/// Random circuit on a rows x cols grid: each cycle is a layer
/// of random sqrt(X)/sqrt(Y)/sqrt(W) gates followed by a coupler layer that
/// cycles through the four grid patterns, with a closing single-qubit layer.
Circuit make_random_circuit(const RandomCircuitOptions& options);

}  // namespace slicesim

#endif  // SLICESIM_CIRCUIT_H_
