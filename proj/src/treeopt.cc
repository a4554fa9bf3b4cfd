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

#include "slicesim/treeopt.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <tuple>

#include "slicesim/errors.h"
#include "slicesim/rng.h"

namespace slicesim {

void PlannerConfig::validate() const {
  if (!(memory_budget_bytes > 0)) throw InputError("memory budget must be positive");
  if (!(cooling > 0.0 && cooling < 1.0)) throw InputError("cooling factor must lie in (0, 1)");
  if (initial_temperature < 0) throw InputError("temperature must be non-negative");
  if (restarts == 0) throw InputError("restarts must be at least 1");
}

// ------------------------------------------------------------------- greedy

namespace {

struct Legs {
  std::vector<Label> labels;  // sorted
  std::vector<int> counts;
};

/// Result legs and union size of joining a and b.
std::pair<Legs, int> join(const Legs& a, const Legs& b, const std::vector<int>& total,
                          const TensorNetwork& net) {
  Legs out;
  int union_size = 0;
  std::size_t i = 0, j = 0;
  auto emit = [&](Label l, int c) {
    ++union_size;
    if (c < total[l] || net.is_open(l)) {
      out.labels.push_back(l);
      out.counts.push_back(c);
    }
  };
  while (i < a.labels.size() || j < b.labels.size()) {
    if (j == b.labels.size() || (i < a.labels.size() && a.labels[i] < b.labels[j])) {
      emit(a.labels[i], a.counts[i]);
      ++i;
    } else if (i == a.labels.size() || b.labels[j] < a.labels[i]) {
      emit(b.labels[j], b.counts[j]);
      ++j;
    } else {
      emit(a.labels[i], a.counts[i] + b.counts[j]);
      ++i;
      ++j;
    }
  }
  return {std::move(out), union_size};
}

}  // namespace

ContractionTree greedy_tree(const TensorNetwork& net) {
  net.validate();
  const std::size_t leaves = net.tensors.size();
  const auto total = net.label_counts();
  std::vector<Legs> legs(2 * leaves);
  std::vector<int> left(2 * leaves, -1), right(2 * leaves, -1);
  std::set<int> active;
  std::vector<std::set<int>> holders(total.size());
  for (std::size_t i = 0; i < leaves; ++i) {
    std::vector<Label> sorted = net.tensors[i].labels;
    std::sort(sorted.begin(), sorted.end());
    legs[i].labels = sorted;
    legs[i].counts.assign(sorted.size(), 1);
    for (Label l : sorted) holders[l].insert(static_cast<int>(i));
    active.insert(static_cast<int>(i));
  }

  int next = static_cast<int>(leaves);
  while (active.size() > 1) {
    // (result rank, union rank, a, b)
    std::tuple<int, int, int, int> best{std::numeric_limits<int>::max(), 0, 0, 0};
    bool found = false;
    for (int a : active) {
      for (Label l : legs[a].labels) {
        for (int b : holders[l]) {
          if (b <= a) continue;
          auto [joined, union_size] = join(legs[a], legs[b], total, net);
          std::tuple<int, int, int, int> key{static_cast<int>(joined.labels.size()), union_size, a, b};
          if (!found || key < best) {
            best = key;
            found = true;
          }
        }
      }
    }
    int a, b;
    if (found) {
      a = std::get<2>(best);
      b = std::get<3>(best);
    } else {
      // Disconnected components: outer product of the two lowest ids.
      auto it = active.begin();
      a = *it++;
      b = *it;
    }
    const int node = next++;
    legs[node] = join(legs[a], legs[b], total, net).first;
    left[node] = a;
    right[node] = b;
    for (int old : {a, b}) {
      for (Label l : legs[old].labels) holders[l].erase(old);
      active.erase(old);
      legs[old] = {};
    }
    for (Label l : legs[node].labels) holders[l].insert(node);
    active.insert(node);
  }
  const int root = *active.begin();
  left.resize(next);
  right.resize(next);
  return ContractionTree::from_links(leaves, left, right, root);
}

// ---------------------------------------------------------------- annealing

namespace {

struct LinkedTree {
  std::size_t leaves = 0;
  std::vector<int> left, right, parent;
  int root = 0;

  static LinkedTree from(const ContractionTree& t) {
    LinkedTree lt;
    lt.leaves = t.num_leaves();
    const std::size_t nodes = t.num_nodes();
    lt.left.assign(nodes, -1);
    lt.right.assign(nodes, -1);
    lt.parent.assign(nodes, -1);
    for (std::size_t k = 0; k < t.steps().size(); ++k) {
      const int node = static_cast<int>(t.num_leaves() + k);
      const auto [l, r] = t.steps()[k];
      lt.left[node] = l;
      lt.right[node] = r;
      lt.parent[l] = node;
      lt.parent[r] = node;
    }
    lt.root = t.root();
    return lt;
  }

  ContractionTree to_tree(const std::vector<Label>& sliced) const {
    return ContractionTree::from_links(leaves, left, right, root, sliced);
  }

  bool is_leaf(int n) const { return n < static_cast<int>(leaves); }

  void replace_child(int p, int old_child, int new_child) {
    if (p < 0) {
      root = new_child;
    } else if (left[p] == old_child) {
      left[p] = new_child;
    } else {
      right[p] = new_child;
    }
    parent[new_child] = p;
  }

  bool rotate(CounterRng& rng) {
    const int internal = static_cast<int>(left.size() - leaves);
    for (int attempt = 0; attempt < 8; ++attempt) {
      const int n = static_cast<int>(leaves + rng.below(internal));
      const bool l_int = !is_leaf(left[n]);
      const bool r_int = !is_leaf(right[n]);
      if (!l_int && !r_int) continue;
      bool use_left = l_int && (!r_int || rng.below(2) == 0);
      const int c = use_left ? left[n] : right[n];
      const int d = use_left ? right[n] : left[n];
      const bool keep_first = rng.below(2) == 0;
      const int x = keep_first ? left[c] : right[c];
      const int y = keep_first ? right[c] : left[c];
      left[c] = y;
      right[c] = d;
      parent[y] = c;
      parent[d] = c;
      left[n] = x;
      right[n] = c;
      parent[x] = n;
      parent[c] = n;
      return true;
    }
    return false;
  }

  bool transplant(CounterRng& rng) {
    if (leaves < 3) return false;
    const int x = static_cast<int>(rng.below(leaves));
    const int p = parent[x];
    const int s = left[p] == x ? right[p] : left[p];
    replace_child(parent[p], p, s);
    int y;
    do {
      y = static_cast<int>(rng.below(left.size()));
    } while (y == x || y == p);
    const int yp = parent[y];
    left[p] = x;
    right[p] = y;
    parent[x] = p;
    parent[y] = p;
    replace_child(yp, y, p);
    return true;
  }
};

double objective(const TreeAnalysis& a) { return std::log2(a.total_multiplications()); }

}  // namespace

ContractionTree anneal_tree(const TensorNetwork& net, const ContractionTree& start,
                            const PlannerConfig& config) {
  config.validate();
  const TreeAnalysis start_analysis = analyze_tree(net, start);
  if (config.anneal_steps == 0 || start.num_leaves() < 3) return start;
  const double memory_limit = start_analysis.peak_bytes() <= config.memory_budget_bytes
                                  ? config.memory_budget_bytes
                                  : start_analysis.peak_bytes();
  const auto& sliced = start.sliced();
  auto rng = make_rng(config.seed, RngStream::kAnnealing);

  LinkedTree current = LinkedTree::from(start);
  double current_cost = objective(start_analysis);
  ContractionTree best = start;
  double best_cost = current_cost;
  double temperature = config.initial_temperature;

  for (std::size_t step = 0; step < config.anneal_steps; ++step) {
    LinkedTree candidate = current;
    const bool moved = rng.below(2) == 0 ? candidate.rotate(rng) : candidate.transplant(rng);
    const double u = rng.uniform();
    temperature *= config.cooling;
    if (!moved) continue;
    ContractionTree tree = candidate.to_tree(sliced);
    const TreeAnalysis a = analyze_tree(net, tree);
    if (a.peak_bytes() > memory_limit) continue;
    const double cost = objective(a);
    const double delta = cost - current_cost;
    if (delta <= 0 || (temperature > 0 && u < std::exp(-delta / temperature))) {
      current = std::move(candidate);
      current_cost = cost;
      if (cost < best_cost) {
        best_cost = cost;
        best = std::move(tree);
      }
    }
  }
  return best;
}

// ------------------------------------------------------------------ slicing

SlicingResult choose_fully_sliced(const TensorNetwork& net, const ContractionTree& tree,
                                  double budget_bytes, std::size_t min_sliced) {
  if (!(budget_bytes > 0)) throw InputError("memory budget must be positive");
  ContractionTree current = tree;
  while (true) {
    const TreeAnalysis a = analyze_tree(net, current);
    std::vector<int> over;
    for (std::size_t node = 0; node < a.legs.size(); ++node) {
      if (16.0 * std::ldexp(1.0, static_cast<int>(a.legs[node].size())) > budget_bytes) {
        over.push_back(static_cast<int>(node));
      }
    }
    if (over.empty() && current.sliced().size() >= min_sliced) {
      return {current.sliced(), current, {a.multiplications_per_slice, a.slice_count, a.peak_bytes()}};
    }
    // label -> (over-budget intermediates holding it, largest intermediate rank)
    std::map<Label, std::pair<int, int>> score;
    const auto& pool = over;
    std::vector<int> all_nodes;
    if (over.empty()) {
      for (std::size_t node = current.num_leaves(); node < a.legs.size(); ++node) {
        all_nodes.push_back(static_cast<int>(node));
      }
    }
    for (int node : over.empty() ? all_nodes : pool) {
      const int rank = static_cast<int>(a.legs[node].size());
      for (Label l : a.legs[node]) {
        if (net.is_open(l)) continue;
        auto& [hits, largest] = score[l];
        if (!over.empty()) ++hits;
        largest = std::max(largest, rank);
      }
    }
    if (score.empty()) {
      if (!over.empty()) {
        throw MemoryBudgetError("memory budget unreachable: an intermediate tensor has no sliceable leg");
      }
      return {current.sliced(), current, {a.multiplications_per_slice, a.slice_count, a.peak_bytes()}};
    }
    Label pick = score.begin()->first;
    auto best = score.begin()->second;
    for (const auto& [label, s] : score) {
      if (s.first > best.first || (s.first == best.first && s.second > best.second)) {
        pick = label;
        best = s;
      }
    }
    std::vector<Label> sliced = current.sliced();
    sliced.push_back(pick);
    current.set_sliced(std::move(sliced));
  }
}

ContractionPlan plan_contraction(const TensorNetwork& net, const PlannerConfig& config) {
  config.validate();
  const ContractionTree greedy = greedy_tree(net);
  const SlicingResult sliced =
      choose_fully_sliced(net, greedy, config.memory_budget_bytes, config.min_sliced);
  ContractionPlan best;
  bool have = false;
  for (std::size_t r = 0; r < config.restarts; ++r) {
    PlannerConfig run = config;
    run.seed = config.seed + r;
    ContractionTree tree = anneal_tree(net, sliced.tree, run);
    const ContractionCost cost = contraction_cost(net, tree);
    if (!have || cost.total_multiplications() < best.cost.total_multiplications()) {
      best = {std::move(tree), cost, run.seed};
      have = true;
    }
  }
  return best;
}

// ------------------------------------------------------------- free outputs

std::vector<int> choose_free_outputs(const Circuit& c, std::size_t count,
                                     const PlannerConfig& config, const NetworkOptions& options) {
  const int n = c.num_qubits();
  if (count > static_cast<std::size_t>(n)) throw InputError("more free outputs than qubits");
  std::vector<int> free;
  for (int q = n - static_cast<int>(count); q < n; ++q) free.push_back(q);
  if (count == 0 || count == static_cast<std::size_t>(n)) return free;

  auto score = [&](const std::vector<int>& f) {
    std::map<int, int> fixed;
    for (int q = 0; q < n; ++q) {
      if (std::find(f.begin(), f.end(), q) == f.end()) fixed[q] = 0;
    }
    const TensorNetwork net = build_network(c, OutputSpec::batch(n, fixed, f), options);
    const ContractionTree tree = greedy_tree(net);
    return choose_fully_sliced(net, tree, config.memory_budget_bytes).cost.total_multiplications();
  };

  double current = score(free);
  for (int round = 0; round < n; ++round) {
    std::vector<int> best_set;
    double best = current;
    for (std::size_t i = 0; i < free.size(); ++i) {
      for (int q = 0; q < n; ++q) {
        if (std::find(free.begin(), free.end(), q) != free.end()) continue;
        std::vector<int> trial = free;
        trial[i] = q;
        std::sort(trial.begin(), trial.end());
        const double s = score(trial);
        if (s < best) {
          best = s;
          best_set = trial;
        }
      }
    }
    if (best_set.empty()) break;
    free = best_set;
    current = best;
  }
  return free;
}

}  // namespace slicesim
