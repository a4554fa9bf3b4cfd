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

#include "slicesim/xeb.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

#include "slicesim/errors.h"

namespace slicesim {

XebReport xeb_fidelity(const std::vector<double>& probabilities, int num_qubits) {
  if (probabilities.empty()) throw InputError("no probabilities for XEB");
  for (double p : probabilities) {
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("probability outside [0, 1]");
  }
  const double scale = std::ldexp(1.0, num_qubits);
  const Moments m = moments(probabilities);
  XebReport r;
  r.count = probabilities.size();
  r.num_qubits = num_qubits;
  r.probability_sum = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
  r.mean_normalized = scale * r.probability_sum / static_cast<double>(r.count);
  r.fidelity = r.mean_normalized - 1.0;
  r.standard_error = scale * m.standard_error();
  return r;
}

int SpoofConfig::resolved_batch_bits(int num_qubits) const {
  if (batch_bits) return *batch_bits;
  const int b = static_cast<int>(std::ceil(std::log2(10.0 * static_cast<double>(num_bitstrings))));
  return std::min(num_qubits, std::max(b, 0));
}

std::size_t SpoofConfig::resolved_count(int num_qubits) const {
  if (ratio) {
    return static_cast<std::size_t>(std::floor(*ratio * std::ldexp(1.0, resolved_batch_bits(num_qubits))));
  }
  return num_bitstrings;
}

void SpoofConfig::validate(int num_qubits) const {
  if (!(fidelity > 0.0 && fidelity <= 1.0)) throw InputError("spoof fidelity must lie in (0, 1]");
  if (ratio && !(*ratio > 0.0 && *ratio <= 1.0)) throw InputError("ratio must lie in (0, 1]");
  if (!ratio && num_bitstrings == 0) throw InputError("spoofing needs N > 0 or a ratio");
  const int b = resolved_batch_bits(num_qubits);
  if (b < 1 || b > num_qubits) throw InputError("batch size out of range");
  const std::size_t count = resolved_count(num_qubits);
  if (count == 0) throw InputError("spoofing would select no bitstrings");
  if (static_cast<double>(count) > std::ldexp(1.0, b)) throw InputError("N exceeds the batch size 2^b");
}

std::vector<std::size_t> top_amplitudes(const std::vector<Complex>& amplitudes, std::size_t count) {
  std::vector<std::size_t> order(amplitudes.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> mag(amplitudes.size());
  for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::norm(amplitudes[i]);
  count = std::min(count, order.size());
  std::partial_sort(order.begin(), order.begin() + count, order.end(),
                    [&](std::size_t a, std::size_t b) { return mag[a] > mag[b] || (mag[a] == mag[b] && a < b); });
  order.resize(count);
  return order;
}

SpoofResult spoof(const Circuit& c, const SpoofConfig& config, const PlannerConfig& planner,
                  const ContractOptions& contract, const NetworkOptions& options) {
  const int n = c.num_qubits();
  config.validate(n);
  const int b = config.resolved_batch_bits(n);
  const std::vector<int> free = choose_free_outputs(c, static_cast<std::size_t>(b), planner, options);
  std::map<int, int> fixed;
  for (int q = 0; q < n; ++q) {
    if (std::find(free.begin(), free.end(), q) == free.end()) fixed[q] = 0;
  }
  const OutputSpec spec = OutputSpec::batch(n, fixed, free);
  const TensorNetwork net = build_network(c, spec, options);
  const ContractionPlan plan = plan_contraction(net, planner);

  SpoofResult out;
  if (config.fidelity < 1.0) {
    const VertexSet sliced = sliced_vertices(net, plan.tree);
    if (sliced.empty()) throw InputError("partial slicing needs at least one sliced leg");
    out.slices = select_partial_slices(c, sliced, config.fidelity, planner, std::nullopt, options);
    const ContractionTree tree =
        execution_tree(net, plan.tree, out.slices->partial, planner.memory_budget_bytes);
    out.batch = partial_amplitudes(*out.slices, spec, net, tree, contract);
    out.achieved_fidelity = out.slices->achieved;
  } else {
    const ContractionTree tree = execution_tree(net, plan.tree, {}, planner.memory_budget_bytes);
    Tensor t = sliced_contract_sum(net, tree, {}, {0}, contract);
    out.batch = AmplitudeBatch{spec, std::move(t.data)};
  }
  const std::size_t count = config.resolved_count(n);
  for (std::size_t i : top_amplitudes(out.batch.amplitudes, count)) {
    out.bitstrings.push_back(spec.bitstring(i));
  }
  out.ratio = static_cast<double>(count) / std::ldexp(1.0, b);
  return out;
}

double expected_spoof_xeb(double fidelity, double ratio) {
  if (!(ratio > 0.0 && ratio <= 1.0)) throw InputError("ratio must lie in (0, 1]");
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) throw InputError("fidelity must lie in [0, 1]");
  return -fidelity * std::log(ratio);
}

double order_stat_expectation(std::size_t n, std::size_t k, double lambda) {
  if (k < 1 || k > n) throw InputError("need 1 <= k <= N");
  if (!(lambda > 0)) throw InputError("lambda must be positive");
  double sum = 0;
  for (std::size_t i = n; i >= k; --i) sum += 1.0 / static_cast<double>(i);
  return sum / lambda;
}

PorterThomasReport porter_thomas_diagnostics(const std::vector<double>& bitstring_probabilities,
                                             const std::vector<double>& batch_probabilities,
                                             int num_qubits, double batch_size) {
  if (bitstring_probabilities.empty()) throw InputError("no probabilities to diagnose");
  const double dim = std::ldexp(1.0, num_qubits);
  PorterThomasReport r;
  std::vector<double> x;
  x.reserve(bitstring_probabilities.size());
  for (double p : bitstring_probabilities) x.push_back(dim * p);
  r.exponential = ks_test(x, [](double v) { return v <= 0 ? 0.0 : -std::expm1(-v); });
  r.bitstring_histogram = make_histogram(x);
  if (!batch_probabilities.empty()) {
    if (!(batch_size >= 1)) throw InputError("batch size must be at least 1");
    const double nb = dim / batch_size;
    std::vector<double> y;
    for (double p : batch_probabilities) y.push_back(nb * p);
    r.gamma = ks_test(y, [batch_size](double v) {
      return v <= 0 ? 0.0 : boost::math::gamma_p(batch_size, batch_size * v);
    });
    r.batch_histogram = make_histogram(y);
  }
  return r;
}

NormStatistics norm_statistics(const NormTable& table) {
  if (table.values.empty()) throw InputError("empty norm table");
  const double scale = static_cast<double>(table.values.size());
  std::vector<double> v;
  for (double r : table.values) v.push_back(scale * r);
  const Moments m = moments(v);
  if (std::abs(m.mean - 1.0) > 1e-6) {
    throw InvariantError("normalized slice norms have mean " + std::to_string(m.mean));
  }
  NormStatistics s;
  // Population variance over all 2^k entries.
  s.normalized_stddev = std::sqrt(m.variance * (m.count > 1 ? (m.count - 1.0) / m.count : 0.0));
  s.min = *std::min_element(v.begin(), v.end());
  s.max = *std::max_element(v.begin(), v.end());
  return s;
}

}  // namespace slicesim
