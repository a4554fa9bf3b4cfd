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

#include "test_util.h"

#include <algorithm>
#include <map>
#include <set>

#include "slicesim/errors.h"

namespace slicesim::testing {

std::vector<Circuit> corpus(std::size_t count) {
  static const int kShapes[][2] = {{2, 5}, {3, 4}, {2, 6}, {2, 7}, {3, 4}};
  std::vector<Circuit> out;
  for (std::size_t i = 0; i < count; ++i) {
    RandomCircuitOptions o;
    o.rows = kShapes[i % 5][0];
    o.cols = kShapes[i % 5][1];
    o.cycles = 6 + static_cast<int>(i % 5);
    o.seed = 1000 + i;
    o.use_fsim = (i % 4) != 3;
    out.push_back(make_random_circuit(o));
  }
  return out;
}

Tensor brute_force_contract(const TensorNetwork& net) {
  std::vector<Label> all;
  for (const Tensor& t : net.tensors) all.insert(all.end(), t.labels.begin(), t.labels.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  if (all.size() > 26) throw InputError("network too large for brute force");
  std::map<Label, std::size_t> pos;
  for (std::size_t i = 0; i < all.size(); ++i) pos[all[i]] = i;

  Tensor out = Tensor::zeros(net.open_labels);
  const std::uint64_t total = std::uint64_t{1} << all.size();
  for (std::uint64_t a = 0; a < total; ++a) {
    auto bit = [&](Label l) { return (a >> pos[l]) & 1; };
    Complex term = 1.0;
    for (const Tensor& t : net.tensors) {
      std::size_t idx = 0;
      for (Label l : t.labels) idx = (idx << 1) | bit(l);
      term *= t.data[idx];
      if (term == Complex(0.0)) break;
    }
    std::size_t o = 0;
    for (Label l : net.open_labels) o = (o << 1) | bit(l);
    out.data[o] += term;
  }
  return out;
}

std::vector<std::size_t> reference_lightcone(const Circuit& c, const VertexSet& s) {
  // live[q] = earliest slot on q that is still needed.
  std::vector<int> need(c.num_qubits(), -1);
  for (VertexId v : s) {
    const VertexCoords at = c.coords(v);
    need[at.qubit] = std::max(need[at.qubit], at.slot);
  }
  std::vector<int> slot(c.num_qubits(), 0);
  std::vector<std::vector<int>> gate_slot(c.gates().size());
  for (const Gate& g : c.gates()) {
    for (int q : g.qubits) gate_slot[g.index].push_back(++slot[q]);
  }
  std::vector<std::size_t> out;
  for (std::size_t gi = c.gates().size(); gi-- > 0;) {
    const Gate& g = c.gate(gi);
    bool hit = false;
    for (std::size_t k = 0; k < g.qubits.size(); ++k) {
      if (gate_slot[gi][k] <= need[g.qubits[k]]) hit = true;
    }
    if (!hit) continue;
    out.push_back(gi);
    for (std::size_t k = 0; k < g.qubits.size(); ++k) {
      need[g.qubits[k]] = std::max(need[g.qubits[k]], gate_slot[gi][k] - 1);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

VertexSet reference_lightcone_inputs(const Circuit& c, const VertexSet& s) {
  std::vector<int> slot(c.num_qubits(), 0);
  std::vector<std::vector<int>> gate_slot(c.gates().size());
  for (const Gate& g : c.gates()) {
    for (int q : g.qubits) gate_slot[g.index].push_back(slot[q]++);
  }
  std::vector<VertexId> ids;
  for (std::size_t gi : reference_lightcone(c, s)) {
    const Gate& g = c.gate(gi);
    for (std::size_t k = 0; k < g.qubits.size(); ++k) ids.push_back(c.vertex(g.qubits[k], gate_slot[gi][k]));
  }
  return VertexSet(ids);
}

VertexSet reference_sliced_vertex_select(const Circuit& c, const VertexSet& sliced, std::size_t k) {
  std::set<std::uint32_t> chosen;
  auto as_set = [](const std::set<std::uint32_t>& s) {
    std::vector<VertexId> v;
    for (auto x : s) v.push_back(VertexId{x});
    return VertexSet(v);
  };
  while (chosen.size() < k) {
    const VertexSet cone = reference_lightcone_inputs(c, as_set(chosen));
    std::uint32_t best = 0;
    std::size_t best_size = SIZE_MAX;
    for (VertexId v : sliced) {
      if (cone.contains(v) || chosen.count(v.value)) continue;
      auto trial = chosen;
      trial.insert(v.value);
      const std::size_t size = reference_lightcone_inputs(c, as_set(trial)).size();
      if (size < best_size || (size == best_size && v.value < best)) {
        best = v.value;
        best_size = size;
      }
    }
    if (best_size == SIZE_MAX) break;
    const VertexSet evict = reference_lightcone_inputs(c, VertexSet{VertexId{best}});
    for (auto it = chosen.begin(); it != chosen.end();) {
      it = evict.contains(VertexId{*it}) ? chosen.erase(it) : std::next(it);
    }
    chosen.insert(best);
  }
  return as_set(chosen);
}

PlannerConfig small_planner(std::size_t min_sliced, std::uint64_t seed) {
  PlannerConfig p;
  p.memory_budget_bytes = 16.0 * 4096;
  p.min_sliced = min_sliced;
  p.anneal_steps = 300;
  p.seed = seed;
  return p;
}

Circuit one_qubit_circuit(const std::string& gate) {
  return parse_circuit("1\n0 " + gate + " 0\n");
}

double max_abs_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size()) return 1e300;
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace slicesim::testing
