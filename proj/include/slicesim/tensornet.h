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

#ifndef SLICESIM_TENSORNET_H_
#define SLICESIM_TENSORNET_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slicesim/circuit.h"

namespace slicesim {

/// Leg label. Every leg in this code base has dimension 2.
using Label = std::int32_t;

/// Dense tensor; data is row-major with labels[0] the most significant index.
struct Tensor {
  std::vector<Label> labels;
  std::vector<Complex> data;

  std::size_t rank() const { return labels.size(); }
  std::size_t size() const { return data.size(); }
  static Tensor zeros(std::vector<Label> labels);
  static Tensor scalar(Complex value) { return Tensor{{}, {value}}; }
};

/// Reorders the axes of `t` to `order` (a permutation of t.labels).
Tensor permute(const Tensor& t, const std::vector<Label>& order);

/// Pairwise contraction. Labels shared by a and b that are missing from
/// `result_labels` are summed; shared labels that remain (hyperedges still
/// used elsewhere) act as batch indices. The result is laid out in the order
/// of `result_labels`.
Tensor contract_pair(const Tensor& a, const Tensor& b, const std::vector<Label>& result_labels);

/// Restricts the given labels to fixed values, dropping those axes.
Tensor fix_labels(const Tensor& t, const std::vector<std::pair<Label, int>>& values);

/// Hypergraph of tensors. A label shared by two or more tensors is summed over
/// unless it is open. Labels held by a single tensor must be open (or sliced
/// at contraction time).
struct TensorNetwork {
  std::vector<Tensor> tensors;
  std::vector<Label> open_labels;  // sorted
  /// Circuit vertices each label stands for. Legs through diagonal gates are
  /// merged, so one label may carry several vertices.
  std::map<Label, std::vector<VertexId>> provenance;

  Label max_label() const;
  /// Number of tensors holding each label, indexed by label.
  std::vector<int> label_counts() const;
  bool is_open(Label l) const;
  std::optional<Label> label_of(VertexId v) const;
  /// Smallest vertex id carried by the label.
  VertexId representative(Label l) const;

  /// Throws InputError if the structural invariants do not hold.
  void validate() const;
  /// FNV-1a digest of labels, tensor shapes and open legs (not data), so
  /// batches differing only in fixed output bits share a hash.
  std::uint64_t structure_hash() const;
};

enum class OutputBit : char { kZero = '0', kOne = '1', kFree = '*' };

/// Which circuit outputs are fixed (closed with a basis vector) and which are
/// left open. Free outputs enumerate amplitude blocks with the lowest free
/// qubit as the most significant bit.
class OutputSpec {
 public:
  OutputSpec() = default;
  static OutputSpec closed(std::string_view bitstring);
  static OutputSpec open_all(int num_qubits);
  /// fixed: qubit -> bit. free: qubits left open. Together they must
  /// partition 0..num_qubits-1.
  static OutputSpec batch(int num_qubits, const std::map<int, int>& fixed,
                          const std::vector<int>& free);
  /// Same, with the free outputs given as circuit output vertices.
  static OutputSpec batch(const Circuit& c, const std::map<int, int>& fixed,
                          const VertexSet& free_outputs);
  /// "01*1*": '*' marks a free output.
  static OutputSpec from_pattern(std::string_view pattern);

  int num_qubits() const { return static_cast<int>(bits_.size()); }
  const std::vector<OutputBit>& bits() const { return bits_; }
  std::string pattern() const;
  std::vector<int> free_qubits() const;
  std::vector<int> fixed_qubits() const;
  std::size_t num_free() const;
  /// Full bitstring for entry `free_index` of the amplitude block.
  std::string bitstring(std::uint64_t free_index) const;

  bool operator==(const OutputSpec&) const = default;

 private:
  std::vector<OutputBit> bits_;
};

/// Amplitudes <x|psi> for every x matching `spec`, indexed like
/// OutputSpec::bitstring.
struct AmplitudeBatch {
  OutputSpec spec;
  std::vector<Complex> amplitudes;
};

struct NetworkOptions {
  /// Diagonal gates (cz, rz, diagonal u1/u2) become tensors on their input
  /// legs only; their output legs share the input labels.
  bool merge_diagonal = true;
  double memory_budget_bytes = std::numeric_limits<double>::infinity();
};

/// Builds the network whose contraction gives the amplitudes <x|C|0> for all
/// x matching `spec`. Labels are vertex ids (the smallest vertex of each
/// merged leg).
TensorNetwork build_network(const Circuit& c, const OutputSpec& spec,
                            const NetworkOptions& options = {});

/// Binary contraction plan. Leaves 0..num_leaves-1 are tensor ids; internal
/// node num_leaves + k joins steps[k]. Steps are stored in postorder.
class ContractionTree {
 public:
  ContractionTree() = default;
  ContractionTree(std::size_t num_leaves, std::vector<std::pair<int, int>> steps,
                  std::vector<Label> sliced = {});

  /// Builds a tree from explicit child links of an arbitrary node numbering
  /// (leaves 0..num_leaves-1), renumbering internal nodes into postorder.
  static ContractionTree from_links(std::size_t num_leaves, const std::vector<int>& left,
                                    const std::vector<int>& right, int root,
                                    std::vector<Label> sliced = {});

  std::size_t num_leaves() const { return num_leaves_; }
  std::size_t num_nodes() const { return num_leaves_ + steps_.size(); }
  const std::vector<std::pair<int, int>>& steps() const { return steps_; }
  int root() const { return static_cast<int>(num_nodes()) - 1; }
  bool is_leaf(int node) const { return node < static_cast<int>(num_leaves_); }
  std::pair<int, int> children(int node) const { return steps_.at(node - num_leaves_); }

  /// Fully sliced legs, sorted.
  const std::vector<Label>& sliced() const { return sliced_; }
  void set_sliced(std::vector<Label> sliced);

  /// Throws InputError unless the tree is a valid plan for `net`.
  void validate(const TensorNetwork& net) const;

  bool operator==(const ContractionTree&) const = default;

 private:
  std::size_t num_leaves_ = 0;
  std::vector<std::pair<int, int>> steps_;
  std::vector<Label> sliced_;
};

/// Per-node annotation of a tree with the sliced legs removed.
struct TreeAnalysis {
  std::vector<std::vector<Label>> legs;   // result legs per node, sorted
  std::vector<double> multiplications;    // per node; 0 for leaves
  double multiplications_per_slice = 0;
  double slice_count = 1;
  double peak_elements = 0;               // largest tensor, leaves included

  double peak_bytes() const { return 16.0 * peak_elements; }
  double total_multiplications() const { return multiplications_per_slice * slice_count; }
};

TreeAnalysis analyze_tree(const TensorNetwork& net, const ContractionTree& tree);

struct ContractionCost {
  double multiplications_per_slice = 0;  // C_s
  double slice_count = 1;                // 2^|I|
  double peak_bytes = 0;

  double total_multiplications() const { return multiplications_per_slice * slice_count; }
  double flops() const { return 8.0 * total_multiplications(); }
};

ContractionCost contraction_cost(const TensorNetwork& net, const ContractionTree& tree);
ContractionCost contraction_cost(const TensorNetwork& net, const ContractionTree& tree,
                                 const std::vector<Label>& sliced);

/// Sliced leg -> value.
using SliceAssignment = std::map<Label, int>;

struct ContractOptions {
  double memory_budget_bytes = std::numeric_limits<double>::infinity();
  int threads = 1;
};

/// Largest tensor materialized by a contraction call, for instrumentation.
struct ContractionStats {
  std::size_t max_allocated_elements = 0;
  std::size_t pairwise_contractions = 0;
};

/// Contracts one slice. `assignment` must cover exactly tree.sliced(). The
/// result holds the open legs in ascending label order.
Tensor contract(const TensorNetwork& net, const ContractionTree& tree,
                const SliceAssignment& assignment, const ContractOptions& options = {},
                ContractionStats* stats = nullptr);

/// Sums contract() over every assignment in X x {0,1}^{|I \ S|}, where the
/// partially sliced legs S are a subset of tree.sliced() and each x in X is a
/// |S|-bit index (first label of S = most significant bit). Assignments are
/// visited in lexicographic order and accumulated in fixed-size chunks whose
/// partial sums are reduced in order, so the result does not depend on the
/// thread count.
Tensor sliced_contract_sum(const TensorNetwork& net, const ContractionTree& tree,
                           const std::vector<Label>& partial, const std::vector<std::uint64_t>& x,
                           const ContractOptions& options = {}, ContractionStats* stats = nullptr);

/// Plan file: network hash, leaf list, postorder nodes "(l,r) -> legs",
/// sliced legs.
std::string format_plan(const TensorNetwork& net, const ContractionTree& tree);
struct ParsedPlan {
  std::uint64_t network_hash = 0;
  ContractionTree tree;
};
ParsedPlan parse_plan(std::string_view text);

}  // namespace slicesim

#endif  // SLICESIM_TENSORNET_H_
