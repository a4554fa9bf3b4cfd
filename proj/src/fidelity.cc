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

#include "slicesim/fidelity.h"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <charconv>
#include <cstdio>
#include <numeric>

#include "slicesim/errors.h"
#include "slicesim/formats.h"

namespace slicesim {

namespace {

void check_partial_set(const Circuit& c, const VertexSet& partial) {
  if (partial.empty()) throw InputError("partially sliced set is empty");
  if (partial.size() > 30) throw InputError("too many partially sliced vertices");
  for (VertexId v : partial) {
    if (!c.has_vertex(v)) throw InputError("unknown vertex id " + std::to_string(v.value));
  }
  const VertexSet cone = lightcone_inputs(c, partial);
  for (VertexId v : partial) {
    if (cone.contains(v)) {
      throw InputError("vertex " + std::to_string(v.value) +
                       " lies in the lightcone of another partially sliced vertex");
    }
  }
}

std::string hex_index(std::uint64_t i) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%" PRIx64, i);
  return buf;
}

std::string binary_index(std::uint64_t i, std::size_t k) {
  std::string s(k, '0');
  for (std::size_t b = 0; b < k; ++b) {
    if ((i >> (k - 1 - b)) & 1) s[b] = '1';
  }
  return s;
}

}  // namespace

NormNetwork build_norm_network(const Circuit& c, const VertexSet& partial,
                               const NetworkOptions& options) {
  check_partial_set(c, partial);
  NormNetwork out;
  out.lightcone_circuit = subcircuit(c, lightcone(c, partial));
  const Circuit& c1 = out.lightcone_circuit;
  const int n = c.num_qubits();

  // Each partial vertex is the last vertex of its wire in C1.
  std::vector<int> partial_of_qubit(n, -1);
  for (std::size_t j = 0; j < partial.size(); ++j) {
    const VertexCoords at = c.coords(partial[j]);
    if (at.slot != c1.wire_length(at.qubit) || partial_of_qubit[at.qubit] != -1) {
      throw InvariantError("partially sliced vertex is not an output of its lightcone");
    }
    partial_of_qubit[at.qubit] = static_cast<int>(j);
  }

  NetworkOptions unbounded = options;
  unbounded.memory_budget_bytes = std::numeric_limits<double>::infinity();
  const TensorNetwork half = build_network(c1, OutputSpec::open_all(n), unbounded);

  std::vector<char> active(n, 0);
  for (int q = 0; q < n; ++q) active[q] = c1.wire_length(q) > 0 || partial_of_qubit[q] >= 0;

  std::vector<Label> output_label(n);
  for (int q = 0; q < n; ++q) output_label[q] = *half.label_of(c1.output_vertex(q));
  std::vector<char> shared(2 * c1.num_vertices() + 2, 0);
  for (int q = 0; q < n; ++q) {
    if (active[q] && partial_of_qubit[q] < 0) shared[output_label[q]] = 1;
  }
  auto ket = [](Label l) { return 2 * l; };
  auto bra = [&shared](Label l) { return shared[l] ? 2 * l : 2 * l + 1; };

  TensorNetwork& net = out.network;
  auto add_pair = [&](const Tensor& t) {
    Tensor k = t;
    Tensor b = t;
    for (auto& l : k.labels) l = ket(l);
    for (auto& l : b.labels) l = bra(l);
    for (auto& z : b.data) z = std::conj(z);
    net.tensors.push_back(std::move(k));
    net.tensors.push_back(std::move(b));
  };
  for (std::size_t t = 0; t < half.tensors.size(); ++t) {
    if (t < static_cast<std::size_t>(n) && !active[t]) continue;
    add_pair(half.tensors[t]);
  }
  const Label index_base = static_cast<Label>(2 * c1.num_vertices() + 2);
  out.index_labels.resize(partial.size());
  for (int q = 0; q < n; ++q) {
    const int j = partial_of_qubit[q];
    if (j < 0) continue;
    const Label idx = index_base + j;
    out.index_labels[j] = idx;
    Tensor delta = Tensor::zeros({ket(output_label[q]), bra(output_label[q]), idx});
    delta.data[0] = 1.0;
    delta.data[7] = 1.0;
    net.tensors.push_back(std::move(delta));
  }
  net.open_labels = out.index_labels;
  std::sort(net.open_labels.begin(), net.open_labels.end());
  for (const auto& [label, vertices] : half.provenance) {
    auto& dst = net.provenance[ket(label)];
    for (VertexId v : vertices) {
      const VertexCoords at = c1.coords(v);
      dst.push_back(c.vertex(at.qubit, at.slot));
    }
  }
  net.validate();
  return out;
}

NormTable compute_norms(const Circuit& c, const VertexSet& partial, const PlannerConfig& planner,
                        const NetworkOptions& options) {
  const NormNetwork nn = build_norm_network(c, partial, options);
  PlannerConfig cfg = planner;
  cfg.min_sliced = 0;
  const ContractionPlan plan = plan_contraction(nn.network, cfg);
  ContractOptions copts;
  copts.memory_budget_bytes = planner.memory_budget_bytes;
  const Tensor result = sliced_contract_sum(nn.network, plan.tree, {}, {0}, copts);

  NormTable table;
  table.partial = partial;
  table.values.resize(result.data.size());
  double total = 0;
  for (std::size_t i = 0; i < result.data.size(); ++i) {
    const Complex z = result.data[i];
    if (std::abs(z.imag()) >= 1e-9) {
      throw InvariantError("slice norm has imaginary part " + format_double(z.imag()));
    }
    if (z.real() < -1e-12) throw InvariantError("negative slice norm " + format_double(z.real()));
    table.values[i] = std::max(0.0, z.real());
    total += table.values[i];
  }
  if (std::abs(total - 1.0) > 1e-6) {
    throw InvariantError("slice norms sum to " + format_double(total));
  }
  return table;
}

VertexSet sliced_vertex_select(const Circuit& c, const VertexSet& sliced, std::size_t k) {
  if (sliced.empty()) throw InputError("sliced vertex set is empty");
  VertexSet chosen;
  while (chosen.size() < k) {
    const VertexSet cone = lightcone_inputs(c, chosen);
    std::optional<VertexId> best;
    std::size_t best_size = 0;
    for (VertexId v : sliced) {
      if (cone.contains(v) || chosen.contains(v)) continue;
      VertexSet trial = chosen;
      trial.insert(v);
      const std::size_t size = lightcone_inputs(c, trial).size();
      if (!best || size < best_size) {
        best = v;
        best_size = size;
      }
    }
    if (!best) break;
    chosen = chosen.minus(lightcone_inputs(c, VertexSet{*best}));
    chosen.insert(*best);
  }
  return chosen;
}

std::size_t default_partial_count(double target_fidelity) {
  if (!(target_fidelity > 0.0 && target_fidelity <= 1.0)) {
    throw InputError("target fidelity must lie in (0, 1]");
  }
  return static_cast<std::size_t>(std::ceil(3.0 - std::log2(target_fidelity)));
}

SlicePlan plan_from_norms(const VertexSet& sliced, NormTable norms, double target) {
  if (!(target > 0.0 && target <= 1.0)) throw InputError("target fidelity must lie in (0, 1]");
  const std::size_t k = norms.k();
  if (norms.values.size() != (std::size_t{1} << k)) {
    throw InputError("norm table size does not match its partial set");
  }
  std::vector<std::uint64_t> order(norms.values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
    return norms.values[a] > norms.values[b];
  });
  SlicePlan plan;
  plan.sliced = sliced;
  plan.partial = norms.partial;
  plan.target = target;
  double mass = 0;
  for (std::uint64_t i : order) {
    plan.accepted.push_back(i);
    mass += norms.values[i];
    if (mass >= target - 1e-12) break;
  }
  plan.achieved = mass;
  plan.norms = std::move(norms);

  const double limit = std::ceil(target * std::ldexp(1.0, static_cast<int>(k)));
  if (static_cast<double>(plan.accepted.size()) > limit) {
    throw InvariantError("accepted slice count exceeds ceil(f 2^k)");
  }
  if (plan.achieved < target - 1e-9) throw InvariantError("achieved fidelity below target");
  if (plan.achieved < fidelity_lower_bound(plan) - 1e-9) {
    throw InvariantError("achieved fidelity below |X| / 2^k");
  }
  return plan;
}

SlicePlan select_partial_slices(const Circuit& c, const VertexSet& sliced, double target,
                                const PlannerConfig& planner,
                                std::optional<std::size_t> k_override,
                                const NetworkOptions& options) {
  const std::size_t k0 = k_override ? *k_override : default_partial_count(target);
  if (!(target > 0.0 && target <= 1.0)) throw InputError("target fidelity must lie in (0, 1]");
  const VertexSet partial = sliced_vertex_select(c, sliced, k0);
  if (partial.empty()) throw InputError("no partially sliced vertex could be chosen");
  return plan_from_norms(sliced, compute_norms(c, partial, planner, options), target);
}

VertexSet sliced_vertices(const TensorNetwork& net, const ContractionTree& tree) {
  VertexSet out;
  for (Label l : tree.sliced()) out.insert(net.representative(l));
  return out;
}

ContractionTree execution_tree(const TensorNetwork& net, const ContractionTree& tree,
                               const VertexSet& partial, double budget_bytes) {
  std::vector<Label> keep;
  for (VertexId v : partial) {
    const auto l = net.label_of(v);
    if (!l) throw InputError("vertex " + std::to_string(v.value) + " has no leg in the network");
    keep.push_back(*l);
  }
  std::sort(keep.begin(), keep.end());
  ContractionTree out = tree;
  out.set_sliced(std::move(keep));
  return choose_fully_sliced(net, out, budget_bytes).tree;
}

AmplitudeBatch partial_amplitudes(const SlicePlan& plan, const OutputSpec& spec,
                                  const TensorNetwork& net, const ContractionTree& tree,
                                  const ContractOptions& options) {
  if (plan.accepted.empty() || !(plan.achieved > 0.0)) {
    throw InputError("slice plan accepts no mass");
  }
  const std::size_t k = plan.k();
  std::vector<Label> labels;
  for (VertexId v : plan.partial) {
    const auto l = net.label_of(v);
    if (!l || !std::binary_search(tree.sliced().begin(), tree.sliced().end(), *l)) {
      throw InputError("plan/tree mismatch: vertex " + std::to_string(v.value) +
                       " is not sliced by the contraction tree");
    }
    labels.push_back(*l);
  }
  // sliced_contract_sum reads index bits in ascending label order.
  std::vector<std::size_t> rank(k);
  std::iota(rank.begin(), rank.end(), 0);
  std::sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; });
  std::vector<std::size_t> position(k);
  for (std::size_t p = 0; p < k; ++p) position[rank[p]] = p;
  std::vector<std::uint64_t> x;
  for (std::uint64_t i : plan.accepted) {
    std::uint64_t y = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if ((i >> (k - 1 - j)) & 1) y |= std::uint64_t{1} << (k - 1 - position[j]);
    }
    x.push_back(y);
  }
  Tensor sum = sliced_contract_sum(net, tree, labels, x, options);
  const double scale = 1.0 / std::sqrt(plan.achieved);
  for (auto& z : sum.data) z *= scale;
  return AmplitudeBatch{spec, std::move(sum.data)};
}

double fidelity_lower_bound(const SlicePlan& plan) {
  return static_cast<double>(plan.accepted.size()) / std::ldexp(1.0, static_cast<int>(plan.k()));
}

double cost_with_fidelity(double full_cost, const SlicePlan& plan) {
  const double cost = fidelity_lower_bound(plan) * full_cost;
  const double ceiling = (plan.target + std::ldexp(1.0, -static_cast<int>(plan.k()))) * full_cost;
  if (full_cost > 0 && !(cost < ceiling)) {
    throw InvariantError("cost with fidelity exceeds (f + 2^-k) times the full cost");
  }
  return cost;
}

std::string format_norm_table(const NormTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.values.size(); ++i) {
    out += binary_index(i, table.k());
    out += ' ';
    out += format_double(table.values[i]);
    out += '\n';
  }
  return out;
}

std::string format_slice_plan(const SlicePlan& plan) {
  auto vertex_list = [](const VertexSet& s) {
    std::string line = std::to_string(s.size());
    for (VertexId v : s) line += " " + std::to_string(v.value);
    return line;
  };
  std::string out = "slicesim-slices 1\n";
  out += "k " + std::to_string(plan.k()) + "\n";
  out += "sliced " + vertex_list(plan.sliced) + "\n";
  out += "partial " + vertex_list(plan.partial) + "\n";
  out += "accepted " + std::to_string(plan.accepted.size()) + "\n";
  for (std::uint64_t i : plan.accepted) {
    out += hex_index(i) + " " + format_double(plan.norms.values.at(i)) + "\n";
  }
  out += "fidelity " + format_double(plan.achieved) + "\n";
  out += "target " + format_double(plan.target) + "\n";
  const std::string table = format_norm_table(plan.norms);
  out += "norms " + std::to_string(plan.norms.values.size()) + " " + hex64(fnv1a(table)) + "\n";
  out += table;
  return out;
}

SlicePlan parse_slice_plan(std::string_view text) {
  const auto lines = split_lines(text);
  std::size_t at = 0;
  auto next = [&](std::string_view key) {
    while (at < lines.size() && split_fields(lines[at]).empty()) ++at;
    if (at >= lines.size()) throw ParseError(at + 1, 1, "expected '" + std::string(key) + "'");
    auto fields = split_fields(lines[at]);
    if (!key.empty() && fields[0].first != key) {
      throw ParseError(at + 1, fields[0].second, "expected '" + std::string(key) + "'");
    }
    ++at;
    return fields;
  };
  auto number = [&](std::pair<std::string_view, std::size_t> f) -> std::uint64_t {
    std::uint64_t v = 0;
    const auto res = std::from_chars(f.first.data(), f.first.data() + f.first.size(), v);
    if (res.ec != std::errc() || res.ptr != f.first.data() + f.first.size()) {
      throw ParseError(at, f.second, "expected an unsigned integer");
    }
    return v;
  };
  auto real = [&](std::pair<std::string_view, std::size_t> f) {
    try {
      return parse_double(f.first);
    } catch (const InputError& e) {
      throw ParseError(at, f.second, e.what());
    }
  };
  auto vertex_list = [&](std::string_view key) {
    const auto f = next(key);
    if (f.size() < 2 || f.size() != 2 + number(f[1])) throw ParseError(at, 1, "bad vertex list");
    VertexSet s;
    for (std::size_t i = 2; i < f.size(); ++i) {
      s.insert(VertexId{static_cast<std::uint32_t>(number(f[i]))});
    }
    return s;
  };

  auto header = next("slicesim-slices");
  if (header.size() != 2 || header[1].first != "1") throw ParseError(at, 1, "unsupported slice plan version");
  auto kf = next("k");
  if (kf.size() != 2) throw ParseError(at, 1, "expected 'k <count>'");
  const std::size_t k = number(kf[1]);
  if (k > 30) throw ParseError(at, kf[1].second, "k too large");
  SlicePlan plan;
  plan.sliced = vertex_list("sliced");
  plan.partial = vertex_list("partial");
  if (plan.partial.size() != k) throw ParseError(at, 1, "partial set size differs from k");
  auto af = next("accepted");
  if (af.size() != 2) throw ParseError(at, 1, "expected 'accepted <count>'");
  const std::size_t count = number(af[1]);
  std::vector<std::pair<std::uint64_t, double>> accepted;
  for (std::size_t r = 0; r < count; ++r) {
    auto f = next("");
    if (f.size() != 2) throw ParseError(at, 1, "expected '<hex index> <norm>'");
    std::uint64_t idx = 0;
    const auto res = std::from_chars(f[0].first.data(), f[0].first.data() + f[0].first.size(), idx, 16);
    if (res.ec != std::errc() || res.ptr != f[0].first.data() + f[0].first.size() || (idx >> k) != 0) {
      throw ParseError(at, f[0].second, "bad slice index");
    }
    accepted.emplace_back(idx, real(f[1]));
  }
  auto ff = next("fidelity");
  if (ff.size() != 2) throw ParseError(at, 1, "expected 'fidelity <F>'");
  plan.achieved = real(ff[1]);
  auto tf = next("target");
  if (tf.size() != 2) throw ParseError(at, 1, "expected 'target <f>'");
  plan.target = real(tf[1]);
  auto nf = next("norms");
  if (nf.size() != 3 || number(nf[1]) != (std::size_t{1} << k)) {
    throw ParseError(at, 1, "expected 'norms <2^k> <digest>'");
  }
  const std::string digest(nf[2].first);
  plan.norms.partial = plan.partial;
  for (std::size_t i = 0; i < (std::size_t{1} << k); ++i) {
    auto f = next("");
    if (f.size() != 2 || f[0].first != binary_index(i, k)) {
      throw ParseError(at, 1, "norm table entries must be in index order");
    }
    plan.norms.values.push_back(real(f[1]));
  }
  if (hex64(fnv1a(format_norm_table(plan.norms))) != digest) {
    throw InputError("norm table digest mismatch");
  }
  for (const auto& [idx, norm] : accepted) {
    if (plan.norms.values[idx] != norm) throw InputError("accepted norm differs from the norm table");
    plan.accepted.push_back(idx);
  }
  return plan;
}

}  // namespace slicesim
