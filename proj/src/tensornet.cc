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

#include "slicesim/tensornet.h"

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

#include "slicesim/errors.h"

namespace slicesim {
namespace {

using RowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

bool contains(const std::vector<Label>& v, Label l) {
  return std::find(v.begin(), v.end(), l) != v.end();
}

std::size_t index_of(const std::vector<Label>& v, Label l) {
  return static_cast<std::size_t>(std::find(v.begin(), v.end(), l) - v.begin());
}

}  // namespace

// ------------------------------------------------------------------ kernels

Tensor Tensor::zeros(std::vector<Label> labels) {
  Tensor t;
  t.data.assign(std::size_t{1} << labels.size(), Complex(0.0));
  t.labels = std::move(labels);
  return t;
}

Tensor permute(const Tensor& t, const std::vector<Label>& order) {
  if (order == t.labels) return t;
  const std::size_t rank = t.rank();
  if (order.size() != rank) throw std::logic_error("permute: rank mismatch");
  // Stride (in the input) of each output axis.
  std::vector<std::size_t> stride(rank);
  for (std::size_t k = 0; k < rank; ++k) {
    const std::size_t pos = index_of(t.labels, order[k]);
    if (pos == rank) throw std::logic_error("permute: label not present");
    stride[k] = std::size_t{1} << (rank - 1 - pos);
  }
  Tensor out;
  out.labels = order;
  out.data.resize(t.data.size());
  std::vector<int> digit(rank, 0);
  std::size_t src = 0;
  for (std::size_t dst = 0; dst < out.data.size(); ++dst) {
    out.data[dst] = t.data[src];
    for (std::size_t k = rank; k-- > 0;) {
      if (digit[k] == 0) {
        digit[k] = 1;
        src += stride[k];
        break;
      }
      digit[k] = 0;
      src -= stride[k];
    }
  }
  return out;
}

Tensor contract_pair(const Tensor& a, const Tensor& b, const std::vector<Label>& result_labels) {
  std::vector<Label> batch, summed, only_a, only_b;
  for (Label l : a.labels) {
    if (contains(b.labels, l)) {
      (contains(result_labels, l) ? batch : summed).push_back(l);
    } else {
      only_a.push_back(l);
    }
  }
  for (Label l : b.labels) {
    if (!contains(a.labels, l)) only_b.push_back(l);
  }
  for (Label l : only_a) {
    if (!contains(result_labels, l)) throw std::logic_error("contract_pair: dangling label");
  }
  for (Label l : only_b) {
    if (!contains(result_labels, l)) throw std::logic_error("contract_pair: dangling label");
  }

  std::vector<Label> order_a = batch;
  order_a.insert(order_a.end(), only_a.begin(), only_a.end());
  order_a.insert(order_a.end(), summed.begin(), summed.end());
  std::vector<Label> order_b = batch;
  order_b.insert(order_b.end(), summed.begin(), summed.end());
  order_b.insert(order_b.end(), only_b.begin(), only_b.end());
  const Tensor pa = permute(a, order_a);
  const Tensor pb = permute(b, order_b);

  const Eigen::Index nb = Eigen::Index{1} << batch.size();
  const Eigen::Index m = Eigen::Index{1} << only_a.size();
  const Eigen::Index k = Eigen::Index{1} << summed.size();
  const Eigen::Index n = Eigen::Index{1} << only_b.size();

  Tensor c;
  c.labels = batch;
  c.labels.insert(c.labels.end(), only_a.begin(), only_a.end());
  c.labels.insert(c.labels.end(), only_b.begin(), only_b.end());
  c.data.resize(static_cast<std::size_t>(nb * m * n));
  for (Eigen::Index s = 0; s < nb; ++s) {
    Eigen::Map<const RowMatrix> ma(pa.data.data() + s * m * k, m, k);
    Eigen::Map<const RowMatrix> mb(pb.data.data() + s * k * n, k, n);
    Eigen::Map<RowMatrix> mc(c.data.data() + s * m * n, m, n);
    mc.noalias() = ma * mb;
  }
  return permute(c, result_labels);
}

Tensor fix_labels(const Tensor& t, const std::vector<std::pair<Label, int>>& values) {
  if (values.empty()) return t;
  const std::size_t rank = t.rank();
  std::size_t base = 0;
  std::vector<char> fixed(rank, 0);
  for (const auto& [label, value] : values) {
    const std::size_t pos = index_of(t.labels, label);
    if (pos == rank) throw std::logic_error("fix_labels: label not present");
    fixed[pos] = 1;
    if (value) base |= std::size_t{1} << (rank - 1 - pos);
  }
  Tensor out;
  std::vector<std::size_t> stride;
  for (std::size_t k = 0; k < rank; ++k) {
    if (fixed[k]) continue;
    out.labels.push_back(t.labels[k]);
    stride.push_back(std::size_t{1} << (rank - 1 - k));
  }
  const std::size_t free_rank = out.labels.size();
  out.data.resize(std::size_t{1} << free_rank);
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    std::size_t src = base;
    for (std::size_t k = 0; k < free_rank; ++k) {
      if ((i >> (free_rank - 1 - k)) & 1) src |= stride[k];
    }
    out.data[i] = t.data[src];
  }
  return out;
}

// ------------------------------------------------------------ TensorNetwork

Label TensorNetwork::max_label() const {
  Label m = -1;
  for (const auto& t : tensors) {
    for (Label l : t.labels) m = std::max(m, l);
  }
  for (Label l : open_labels) m = std::max(m, l);
  return m;
}

std::vector<int> TensorNetwork::label_counts() const {
  std::vector<int> counts(static_cast<std::size_t>(max_label() + 1), 0);
  for (const auto& t : tensors) {
    for (Label l : t.labels) ++counts[l];
  }
  return counts;
}

bool TensorNetwork::is_open(Label l) const {
  return std::binary_search(open_labels.begin(), open_labels.end(), l);
}

std::optional<Label> TensorNetwork::label_of(VertexId v) const {
  for (const auto& [label, vertices] : provenance) {
    if (std::find(vertices.begin(), vertices.end(), v) != vertices.end()) return label;
  }
  return std::nullopt;
}

VertexId TensorNetwork::representative(Label l) const {
  auto it = provenance.find(l);
  if (it == provenance.end() || it->second.empty()) {
    throw InputError("label " + std::to_string(l) + " has no circuit vertex");
  }
  return *std::min_element(it->second.begin(), it->second.end());
}

void TensorNetwork::validate() const {
  if (tensors.empty()) throw InputError("network has no tensors");
  if (!std::is_sorted(open_labels.begin(), open_labels.end()) ||
      std::adjacent_find(open_labels.begin(), open_labels.end()) != open_labels.end()) {
    throw InputError("open labels must be sorted and unique");
  }
  for (std::size_t i = 0; i < tensors.size(); ++i) {
    const Tensor& t = tensors[i];
    if (t.data.size() != (std::size_t{1} << t.rank())) {
      throw InputError("tensor " + std::to_string(i) + ": data size does not match its legs");
    }
    std::vector<Label> sorted = t.labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InputError("tensor " + std::to_string(i) + ": repeated leg label");
    }
    for (Label l : t.labels) {
      if (l < 0) throw InputError("negative leg label");
    }
  }
  const auto counts = label_counts();
  for (Label l : open_labels) {
    if (l >= static_cast<Label>(counts.size()) || counts[l] == 0) {
      throw InputError("open label " + std::to_string(l) + " is not on any tensor");
    }
  }
  for (std::size_t l = 0; l < counts.size(); ++l) {
    if (counts[l] == 1 && !is_open(static_cast<Label>(l))) {
      throw InputError("label " + std::to_string(l) + " is on a single tensor but not open");
    }
  }
}

std::uint64_t TensorNetwork::structure_hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint64_t x) {
    for (int k = 0; k < 8; ++k) {
      h ^= (x >> (8 * k)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  feed(tensors.size());
  for (const auto& t : tensors) {
    feed(t.rank());
    for (Label l : t.labels) feed(static_cast<std::uint64_t>(l));
  }
  feed(open_labels.size());
  for (Label l : open_labels) feed(static_cast<std::uint64_t>(l));
  return h;
}

// --------------------------------------------------------------- OutputSpec

OutputSpec OutputSpec::closed(std::string_view bitstring) {
  for (char ch : bitstring) {
    if (ch != '0' && ch != '1') throw InputError("bitstring must contain only 0 and 1");
  }
  return from_pattern(bitstring);
}

OutputSpec OutputSpec::open_all(int num_qubits) {
  return from_pattern(std::string(static_cast<std::size_t>(num_qubits), '*'));
}

OutputSpec OutputSpec::batch(int num_qubits, const std::map<int, int>& fixed,
                             const std::vector<int>& free) {
  std::vector<int> seen(num_qubits, 0);
  OutputSpec spec;
  spec.bits_.assign(num_qubits, OutputBit::kFree);
  for (const auto& [q, bit] : fixed) {
    if (q < 0 || q >= num_qubits) throw InputError("fixed output qubit out of range");
    if (bit != 0 && bit != 1) throw InputError("fixed output bit must be 0 or 1");
    ++seen[q];
    spec.bits_[q] = bit ? OutputBit::kOne : OutputBit::kZero;
  }
  for (int q : free) {
    if (q < 0 || q >= num_qubits) throw InputError("free output qubit out of range");
    ++seen[q];
  }
  for (int q = 0; q < num_qubits; ++q) {
    if (seen[q] != 1) {
      throw InputError("fixed and free outputs must partition the qubits (qubit " +
                       std::to_string(q) + ")");
    }
  }
  return spec;
}

OutputSpec OutputSpec::batch(const Circuit& c, const std::map<int, int>& fixed,
                             const VertexSet& free_outputs) {
  std::vector<int> free;
  for (VertexId v : free_outputs) {
    if (!c.has_vertex(v) || !c.is_output(v)) {
      throw InputError("vertex " + std::to_string(v.value) + " is not a circuit output");
    }
    free.push_back(c.coords(v).qubit);
  }
  return batch(c.num_qubits(), fixed, free);
}

OutputSpec OutputSpec::from_pattern(std::string_view pattern) {
  OutputSpec spec;
  for (char ch : pattern) {
    switch (ch) {
      case '0': spec.bits_.push_back(OutputBit::kZero); break;
      case '1': spec.bits_.push_back(OutputBit::kOne); break;
      case '*': spec.bits_.push_back(OutputBit::kFree); break;
      default: throw InputError(std::string("bad output pattern character '") + ch + "'");
    }
  }
  return spec;
}

std::string OutputSpec::pattern() const {
  std::string out;
  for (OutputBit b : bits_) out.push_back(static_cast<char>(b));
  return out;
}

std::vector<int> OutputSpec::free_qubits() const {
  std::vector<int> out;
  for (int q = 0; q < num_qubits(); ++q) {
    if (bits_[q] == OutputBit::kFree) out.push_back(q);
  }
  return out;
}

std::vector<int> OutputSpec::fixed_qubits() const {
  std::vector<int> out;
  for (int q = 0; q < num_qubits(); ++q) {
    if (bits_[q] != OutputBit::kFree) out.push_back(q);
  }
  return out;
}

std::size_t OutputSpec::num_free() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), OutputBit::kFree));
}

std::string OutputSpec::bitstring(std::uint64_t free_index) const {
  std::string out = pattern();
  const std::size_t nf = num_free();
  std::size_t k = 0;
  for (char& ch : out) {
    if (ch != '*') continue;
    ch = ((free_index >> (nf - 1 - k)) & 1) ? '1' : '0';
    ++k;
  }
  return out;
}

// ------------------------------------------------------------ build_network

TensorNetwork build_network(const Circuit& c, const OutputSpec& spec,
                            const NetworkOptions& options) {
  if (spec.num_qubits() != c.num_qubits()) {
    throw InputError("output spec has " + std::to_string(spec.num_qubits()) +
                     " bits, circuit has " + std::to_string(c.num_qubits()) + " qubits");
  }
  const double block_bytes = 16.0 * std::ldexp(1.0, static_cast<int>(spec.num_free()));
  if (block_bytes > options.memory_budget_bytes) {
    throw MemoryBudgetError("amplitude block of " + std::to_string(spec.num_free()) +
                            " free outputs exceeds the memory budget");
  }

  // Union-find over vertices; diagonal gates glue each output leg to its input.
  std::vector<std::uint32_t> parent(c.num_vertices());
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&parent](std::uint32_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  std::vector<char> diagonal(c.gates().size(), 0);
  if (options.merge_diagonal) {
    for (const Gate& g : c.gates()) {
      if (!is_diagonal(g.matrix, g.dim())) continue;
      diagonal[g.index] = 1;
      const auto ins = c.gate_inputs(g.index);
      const auto outs = c.gate_outputs(g.index);
      for (std::size_t k = 0; k < ins.size(); ++k) {
        const auto a = find(ins[k].value);
        const auto b = find(outs[k].value);
        parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  auto label = [&](VertexId v) { return static_cast<Label>(find(v.value)); };

  TensorNetwork net;
  for (int q = 0; q < c.num_qubits(); ++q) {
    net.tensors.push_back({{label(c.input_vertex(q))}, {1.0, 0.0}});
  }
  for (const Gate& g : c.gates()) {
    const auto ins = c.gate_inputs(g.index);
    Tensor t;
    if (diagonal[g.index]) {
      for (VertexId v : ins) t.labels.push_back(label(v));
      for (int i = 0; i < g.dim(); ++i) t.data.push_back(g.matrix[i * g.dim() + i]);
    } else {
      for (VertexId v : c.gate_outputs(g.index)) t.labels.push_back(label(v));
      for (VertexId v : ins) t.labels.push_back(label(v));
      t.data = g.matrix;
    }
    net.tensors.push_back(std::move(t));
  }
  for (int q = 0; q < c.num_qubits(); ++q) {
    const Label out = label(c.output_vertex(q));
    switch (spec.bits()[q]) {
      case OutputBit::kZero: net.tensors.push_back({{out}, {1.0, 0.0}}); break;
      case OutputBit::kOne: net.tensors.push_back({{out}, {0.0, 1.0}}); break;
      case OutputBit::kFree: net.open_labels.push_back(out); break;
    }
  }
  std::sort(net.open_labels.begin(), net.open_labels.end());
  for (std::uint32_t v = 0; v < c.num_vertices(); ++v) {
    net.provenance[label(VertexId{v})].push_back(VertexId{v});
  }
  return net;
}

// ---------------------------------------------------------- ContractionTree

ContractionTree::ContractionTree(std::size_t num_leaves, std::vector<std::pair<int, int>> steps,
                                 std::vector<Label> sliced)
    : num_leaves_(num_leaves), steps_(std::move(steps)) {
  set_sliced(std::move(sliced));
}

void ContractionTree::set_sliced(std::vector<Label> sliced) {
  std::sort(sliced.begin(), sliced.end());
  sliced.erase(std::unique(sliced.begin(), sliced.end()), sliced.end());
  sliced_ = std::move(sliced);
}

ContractionTree ContractionTree::from_links(std::size_t num_leaves, const std::vector<int>& left,
                                            const std::vector<int>& right, int root,
                                            std::vector<Label> sliced) {
  std::vector<int> renamed(left.size(), -1);
  for (std::size_t i = 0; i < num_leaves; ++i) renamed[i] = static_cast<int>(i);
  std::vector<std::pair<int, int>> steps;
  // Iterative postorder, left child first.
  std::vector<std::pair<int, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [node, expanded] = stack.back();
    stack.pop_back();
    if (node < static_cast<int>(num_leaves)) continue;
    if (!expanded) {
      stack.push_back({node, true});
      stack.push_back({right[node], false});
      stack.push_back({left[node], false});
    } else {
      steps.emplace_back(renamed[left[node]], renamed[right[node]]);
      renamed[node] = static_cast<int>(num_leaves + steps.size() - 1);
    }
  }
  return ContractionTree(num_leaves, std::move(steps), std::move(sliced));
}

void ContractionTree::validate(const TensorNetwork& net) const {
  if (num_leaves_ != net.tensors.size()) {
    throw InputError("plan has " + std::to_string(num_leaves_) + " leaves, network has " +
                     std::to_string(net.tensors.size()) + " tensors");
  }
  if (num_leaves_ == 0 || steps_.size() + 1 != num_leaves_) {
    throw InputError("plan must have exactly leaves - 1 internal nodes");
  }
  std::vector<int> used(num_nodes(), 0);
  for (std::size_t k = 0; k < steps_.size(); ++k) {
    const int self = static_cast<int>(num_leaves_ + k);
    for (int child : {steps_[k].first, steps_[k].second}) {
      if (child < 0 || child >= self) throw InputError("plan node refers to a later node");
      if (++used[child] > 1) throw InputError("plan node used twice");
    }
  }
  const auto counts = net.label_counts();
  for (Label l : sliced_) {
    if (l < 0 || l >= static_cast<Label>(counts.size()) || counts[l] == 0) {
      throw InputError("sliced label " + std::to_string(l) + " is not in the network");
    }
    if (net.is_open(l)) throw InputError("cannot slice open label " + std::to_string(l));
  }
}

// ----------------------------------------------------------------- analysis

namespace {

struct LegCounts {
  std::vector<Label> legs;
  std::vector<int> counts;
};

}  // namespace

TreeAnalysis analyze_tree(const TensorNetwork& net, const ContractionTree& tree) {
  tree.validate(net);
  const auto total = net.label_counts();
  const auto& sliced = tree.sliced();
  auto is_sliced = [&](Label l) { return std::binary_search(sliced.begin(), sliced.end(), l); };

  TreeAnalysis out;
  const std::size_t nodes = tree.num_nodes();
  out.legs.resize(nodes);
  out.multiplications.assign(nodes, 0.0);
  out.slice_count = std::ldexp(1.0, static_cast<int>(sliced.size()));
  std::vector<LegCounts> work(nodes);

  for (std::size_t i = 0; i < tree.num_leaves(); ++i) {
    LegCounts lc;
    std::vector<Label> labels = net.tensors[i].labels;
    std::sort(labels.begin(), labels.end());
    for (Label l : labels) {
      if (is_sliced(l)) continue;
      lc.legs.push_back(l);
      lc.counts.push_back(1);
    }
    out.legs[i] = lc.legs;
    out.peak_elements = std::max(out.peak_elements, std::ldexp(1.0, static_cast<int>(lc.legs.size())));
    work[i] = std::move(lc);
  }
  for (std::size_t k = 0; k < tree.steps().size(); ++k) {
    const std::size_t node = tree.num_leaves() + k;
    const auto [l, r] = tree.steps()[k];
    const LegCounts& a = work[l];
    const LegCounts& b = work[r];
    LegCounts merged;
    std::size_t union_size = 0;
    std::size_t i = 0, j = 0;
    auto emit = [&](Label label, int count) {
      ++union_size;
      if (count < total[label] || net.is_open(label)) {
        merged.legs.push_back(label);
        merged.counts.push_back(count);
      }
    };
    while (i < a.legs.size() || j < b.legs.size()) {
      if (j == b.legs.size() || (i < a.legs.size() && a.legs[i] < b.legs[j])) {
        emit(a.legs[i], a.counts[i]);
        ++i;
      } else if (i == a.legs.size() || b.legs[j] < a.legs[i]) {
        emit(b.legs[j], b.counts[j]);
        ++j;
      } else {
        emit(a.legs[i], a.counts[i] + b.counts[j]);
        ++i;
        ++j;
      }
    }
    out.multiplications[node] = std::ldexp(1.0, static_cast<int>(union_size));
    out.multiplications_per_slice += out.multiplications[node];
    out.legs[node] = merged.legs;
    out.peak_elements = std::max(out.peak_elements, std::ldexp(1.0, static_cast<int>(merged.legs.size())));
    work[node] = std::move(merged);
    work[l] = {};
    work[r] = {};
  }
  return out;
}

ContractionCost contraction_cost(const TensorNetwork& net, const ContractionTree& tree) {
  const TreeAnalysis a = analyze_tree(net, tree);
  return {a.multiplications_per_slice, a.slice_count, a.peak_bytes()};
}

ContractionCost contraction_cost(const TensorNetwork& net, const ContractionTree& tree,
                                 const std::vector<Label>& sliced) {
  ContractionTree copy = tree;
  copy.set_sliced(sliced);
  return contraction_cost(net, copy);
}

// -------------------------------------------------------------- contraction

namespace {

/// Evaluates trees slice by slice, computing the subtrees that hold no sliced
/// leg only once.
class SliceEvaluator {
 public:
  SliceEvaluator(const TensorNetwork& net, const ContractionTree& tree, const ContractOptions& options)
      : net_(net), tree_(tree), analysis_(analyze_tree(net, tree)) {
    if (analysis_.peak_bytes() > options.memory_budget_bytes) {
      throw MemoryBudgetError("contraction needs " + std::to_string(analysis_.peak_bytes()) +
                              " bytes per intermediate, budget is " +
                              std::to_string(options.memory_budget_bytes));
    }
    const auto& sliced = tree.sliced();
    const std::size_t nodes = tree.num_nodes();
    variant_.assign(nodes, 0);
    for (std::size_t i = 0; i < tree.num_leaves(); ++i) {
      for (Label l : net.tensors[i].labels) {
        if (std::binary_search(sliced.begin(), sliced.end(), l)) variant_[i] = 1;
      }
    }
    for (std::size_t k = 0; k < tree.steps().size(); ++k) {
      const auto [l, r] = tree.steps()[k];
      variant_[tree.num_leaves() + k] = variant_[l] || variant_[r];
    }
    // Cache invariant subtrees that feed a variant parent (or are the root).
    cache_.resize(nodes);
    std::vector<char> needed(nodes, 0);
    needed[tree.root()] = !variant_[tree.root()];
    for (std::size_t k = 0; k < tree.steps().size(); ++k) {
      const std::size_t node = tree.num_leaves() + k;
      if (!variant_[node]) continue;
      const auto [l, r] = tree.steps()[k];
      if (!variant_[l]) needed[l] = 1;
      if (!variant_[r]) needed[r] = 1;
    }
    std::vector<Tensor> tmp(nodes);
    for (std::size_t i = 0; i < tree.num_leaves(); ++i) {
      if (!variant_[i]) tmp[i] = net.tensors[i];
    }
    for (std::size_t k = 0; k < tree.steps().size(); ++k) {
      const std::size_t node = tree.num_leaves() + k;
      if (variant_[node]) continue;
      const auto [l, r] = tree.steps()[k];
      tmp[node] = contract_pair(tmp[l], tmp[r], analysis_.legs[node]);
      note(tmp[node].size());
      if (!needed[l]) tmp[l] = {};
      if (!needed[r]) tmp[r] = {};
    }
    for (std::size_t node = 0; node < nodes; ++node) {
      if (needed[node]) cache_[node] = std::move(tmp[node]);
    }
  }

  const TreeAnalysis& analysis() const { return analysis_; }

  Tensor evaluate(const SliceAssignment& assignment, ContractionStats* stats) const {
    const int root = tree_.root();
    if (!variant_[root]) return cache_[root];
    std::vector<Tensor> value(tree_.num_nodes());
    for (std::size_t i = 0; i < tree_.num_leaves(); ++i) {
      if (!variant_[i]) continue;
      std::vector<std::pair<Label, int>> fixed;
      for (Label l : net_.tensors[i].labels) {
        auto it = assignment.find(l);
        if (it != assignment.end()) fixed.emplace_back(l, it->second);
      }
      value[i] = fix_labels(net_.tensors[i], fixed);
    }
    for (std::size_t k = 0; k < tree_.steps().size(); ++k) {
      const std::size_t node = tree_.num_leaves() + k;
      if (!variant_[node]) continue;
      const auto [l, r] = tree_.steps()[k];
      const Tensor& a = variant_[l] ? value[l] : cache_[l];
      const Tensor& b = variant_[r] ? value[r] : cache_[r];
      value[node] = contract_pair(a, b, analysis_.legs[node]);
      if (stats) {
        stats->max_allocated_elements = std::max(stats->max_allocated_elements, value[node].size());
        ++stats->pairwise_contractions;
      }
      if (variant_[l]) value[l] = {};
      if (variant_[r]) value[r] = {};
    }
    return std::move(value[root]);
  }

  void merge_stats(ContractionStats* stats) const {
    if (!stats) return;
    stats->max_allocated_elements = std::max(stats->max_allocated_elements, cached_max_);
    stats->pairwise_contractions += cached_contractions_;
  }

 private:
  void note(std::size_t elements) {
    cached_max_ = std::max(cached_max_, elements);
    ++cached_contractions_;
  }

  const TensorNetwork& net_;
  const ContractionTree& tree_;
  TreeAnalysis analysis_;
  std::vector<char> variant_;
  std::vector<Tensor> cache_;
  std::size_t cached_max_ = 0;
  std::uint64_t cached_contractions_ = 0;
};

Tensor as_result(Tensor t, const TensorNetwork& net) {
  // The root keeps exactly the open labels, already sorted.
  if (t.labels != net.open_labels) t = permute(t, net.open_labels);
  return t;
}

void check_assignment(const ContractionTree& tree, const SliceAssignment& assignment) {
  if (assignment.size() != tree.sliced().size()) {
    throw InputError("slice assignment must cover exactly the sliced legs");
  }
  for (Label l : tree.sliced()) {
    auto it = assignment.find(l);
    if (it == assignment.end()) throw InputError("slice assignment misses leg " + std::to_string(l));
    if (it->second != 0 && it->second != 1) throw InputError("slice values must be 0 or 1");
  }
}

constexpr std::size_t kChunk = 16;

}  // namespace

Tensor contract(const TensorNetwork& net, const ContractionTree& tree,
                const SliceAssignment& assignment, const ContractOptions& options,
                ContractionStats* stats) {
  check_assignment(tree, assignment);
  SliceEvaluator eval(net, tree, options);
  eval.merge_stats(stats);
  return as_result(eval.evaluate(assignment, stats), net);
}

Tensor sliced_contract_sum(const TensorNetwork& net, const ContractionTree& tree,
                           const std::vector<Label>& partial, const std::vector<std::uint64_t>& x,
                           const ContractOptions& options, ContractionStats* stats) {
  std::vector<Label> s = partial;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw InputError("repeated partially sliced leg");
  std::vector<Label> rest;
  std::set_difference(tree.sliced().begin(), tree.sliced().end(), s.begin(), s.end(),
                      std::back_inserter(rest));
  if (rest.size() + s.size() != tree.sliced().size()) {
    throw InputError("partially sliced legs must be a subset of the sliced legs");
  }
  std::vector<std::uint64_t> xs = x;
  std::sort(xs.begin(), xs.end());
  for (std::uint64_t v : xs) {
    if (s.size() < 64 && (v >> s.size()) != 0) throw InputError("slice index out of range");
  }
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  Tensor total = Tensor::zeros(net.open_labels);
  if (xs.empty()) return total;
  SliceEvaluator eval(net, tree, options);
  eval.merge_stats(stats);

  const std::size_t rest_bits = rest.size();
  const std::uint64_t count = static_cast<std::uint64_t>(xs.size()) << rest_bits;
  auto assignment_of = [&](std::uint64_t t) {
    SliceAssignment a;
    const std::uint64_t xv = xs[t >> rest_bits];
    for (std::size_t k = 0; k < s.size(); ++k) a[s[k]] = static_cast<int>((xv >> (s.size() - 1 - k)) & 1);
    for (std::size_t k = 0; k < rest_bits; ++k) a[rest[k]] = static_cast<int>((t >> (rest_bits - 1 - k)) & 1);
    return a;
  };
  auto chunk_sum = [&](std::uint64_t chunk, ContractionStats* local) {
    Tensor acc = Tensor::zeros(net.open_labels);
    const std::uint64_t end = std::min(count, (chunk + 1) * kChunk);
    for (std::uint64_t t = chunk * kChunk; t < end; ++t) {
      Tensor part = as_result(eval.evaluate(assignment_of(t), local), net);
      for (std::size_t i = 0; i < acc.data.size(); ++i) acc.data[i] += part.data[i];
    }
    return acc;
  };

  const std::uint64_t chunks = (count + kChunk - 1) / kChunk;
  const int threads = std::max(1, options.threads);
  if (threads == 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) {
      Tensor part = chunk_sum(c, stats);
      for (std::size_t i = 0; i < total.data.size(); ++i) total.data[i] += part.data[i];
    }
    return total;
  }
  // Waves of chunks fill a slot array; slots are reduced in chunk order.
  const std::uint64_t wave = static_cast<std::uint64_t>(threads) * 4;
  std::vector<ContractionStats> local(threads);
  for (std::uint64_t first = 0; first < chunks; first += wave) {
    const std::uint64_t n = std::min(wave, chunks - first);
    std::vector<Tensor> slots(n);
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w]() {
        for (std::uint64_t c = w; c < n; c += threads) slots[c] = chunk_sum(first + c, &local[w]);
      });
    }
    for (auto& th : pool) th.join();
    for (const Tensor& part : slots) {
      for (std::size_t i = 0; i < total.data.size(); ++i) total.data[i] += part.data[i];
    }
  }
  if (stats) {
    for (const auto& st : local) {
      stats->max_allocated_elements = std::max(stats->max_allocated_elements, st.max_allocated_elements);
      stats->pairwise_contractions += st.pairwise_contractions;
    }
  }
  return total;
}

// ---------------------------------------------------------------- plan file

std::string format_plan(const TensorNetwork& net, const ContractionTree& tree) {
  const TreeAnalysis a = analyze_tree(net, tree);
  std::ostringstream out;
  char hash[17];
  std::snprintf(hash, sizeof(hash), "%016llx", static_cast<unsigned long long>(net.structure_hash()));
  out << "slicesim-plan 1\n";
  out << "network " << hash << "\n";
  out << "leaves " << tree.num_leaves() << "\n";
  for (std::size_t i = 0; i < tree.num_leaves(); ++i) out << (i ? " " : "") << i;
  out << "\n";
  out << "nodes " << tree.steps().size() << "\n";
  for (std::size_t k = 0; k < tree.steps().size(); ++k) {
    const auto [l, r] = tree.steps()[k];
    out << "(" << l << "," << r << ") ->";
    for (Label leg : a.legs[tree.num_leaves() + k]) out << " " << leg;
    out << "\n";
  }
  out << "sliced " << tree.sliced().size();
  for (Label l : tree.sliced()) out << " " << l;
  out << "\n";
  return out.str();
}

ParsedPlan parse_plan(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string word;
  auto expect = [&](const char* keyword) {
    if (!(in >> word) || word != keyword) {
      throw InputError(std::string("plan file: expected '") + keyword + "'");
    }
  };
  ParsedPlan out;
  int version = 0;
  expect("slicesim-plan");
  if (!(in >> version) || version != 1) throw InputError("plan file: unsupported version");
  expect("network");
  std::string hash;
  in >> hash;
  out.network_hash = std::stoull(hash, nullptr, 16);
  expect("leaves");
  std::size_t leaves = 0;
  in >> leaves;
  for (std::size_t i = 0; i < leaves; ++i) {
    std::size_t id = 0;
    if (!(in >> id) || id != i) throw InputError("plan file: leaves must list tensor ids in order");
  }
  expect("nodes");
  std::size_t nodes = 0;
  in >> nodes;
  std::string line;
  std::getline(in, line);
  std::vector<std::pair<int, int>> steps;
  for (std::size_t k = 0; k < nodes; ++k) {
    if (!std::getline(in, line)) throw InputError("plan file: truncated node list");
    int l = 0, r = 0;
    if (std::sscanf(line.c_str(), " (%d,%d)", &l, &r) != 2) {
      throw InputError("plan file: bad node line '" + line + "'");
    }
    steps.emplace_back(l, r);
  }
  expect("sliced");
  std::size_t count = 0;
  in >> count;
  std::vector<Label> sliced(count);
  for (auto& l : sliced) {
    if (!(in >> l)) throw InputError("plan file: truncated sliced list");
  }
  out.tree = ContractionTree(leaves, std::move(steps), std::move(sliced));
  return out;
}

}  // namespace slicesim
