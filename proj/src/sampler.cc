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

#include "slicesim/sampler.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "slicesim/errors.h"
#include "slicesim/rng.h"
#include "slicesim/stats.h"

namespace slicesim {

BatchLayout::BatchLayout(int num_qubits, std::vector<int> batch_qubits)
    : num_qubits_(num_qubits), a_(std::move(batch_qubits)) {
  if (num_qubits < 1 || num_qubits > 62) throw InputError("qubit count out of range");
  std::sort(a_.begin(), a_.end());
  if (std::adjacent_find(a_.begin(), a_.end()) != a_.end()) throw InputError("repeated batch qubit");
  for (int q : a_) {
    if (q < 0 || q >= num_qubits) throw InputError("batch qubit out of range");
  }
  for (int q = 0; q < num_qubits; ++q) {
    if (!std::binary_search(a_.begin(), a_.end(), q)) b_.push_back(q);
  }
}

std::uint64_t BatchLayout::index(std::uint64_t j, std::uint64_t i) const {
  std::uint64_t out = 0;
  const std::size_t na = a_.size();
  const std::size_t nb = b_.size();
  for (std::size_t k = 0; k < na; ++k) {
    if ((i >> (na - 1 - k)) & 1) out |= std::uint64_t{1} << (num_qubits_ - 1 - a_[k]);
  }
  for (std::size_t k = 0; k < nb; ++k) {
    if ((j >> (nb - 1 - k)) & 1) out |= std::uint64_t{1} << (num_qubits_ - 1 - b_[k]);
  }
  return out;
}

std::string BatchLayout::bitstring(std::uint64_t j, std::uint64_t i) const {
  const std::uint64_t x = index(j, i);
  std::string s(num_qubits_, '0');
  for (int q = 0; q < num_qubits_; ++q) {
    if ((x >> (num_qubits_ - 1 - q)) & 1) s[q] = '1';
  }
  return s;
}

void SamplerConfig::validate() const {
  if (!(alpha > 1.0)) throw InputError("alpha must exceed 1");
}

double SampleSet::acceptance_rate() const {
  return batches_drawn == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(batches_drawn);
}

SampleSet sample(const BatchProvider& provider, const BatchLayout& layout,
                 const SamplerConfig& config) {
  config.validate();
  const std::uint64_t nb = layout.batch_count();
  const std::uint64_t na = layout.batch_size();
  CounterRng draw = make_rng(config.seed, RngStream::kSamplerBatches);
  CounterRng accept = make_rng(config.seed, RngStream::kSamplerAccept);
  CounterRng pick = make_rng(config.seed, RngStream::kSamplerPick);
  std::map<std::uint64_t, std::vector<double>> memo;

  SampleSet out;
  while (out.bitstrings.size() < config.num_samples) {
    const std::uint64_t j = draw.below(nb);
    std::vector<double> fresh;
    const std::vector<double>* probs = nullptr;
    if (config.memoize) {
      auto it = memo.find(j);
      if (it == memo.end()) {
        it = memo.emplace(j, provider(j)).first;
        ++out.batches_evaluated;
      }
      probs = &it->second;
    } else {
      fresh = provider(j);
      ++out.batches_evaluated;
      probs = &fresh;
    }
    if (probs->size() != na) throw InputError("batch provider returned the wrong batch size");
    double pj = 0;
    for (double p : *probs) pj += p;
    if (pj < -1e-9 || pj > 1.0 + 1e-9) {
      throw InvariantError("batch probability " + std::to_string(pj) + " outside [0, 1]");
    }
    pj = std::clamp(pj, 0.0, 1.0);
    out.drawn_masses.push_back(pj);
    ++out.batches_drawn;
    const double t = std::min(1.0, pj * static_cast<double>(nb) / config.alpha);
    if (!(accept.uniform() < t)) continue;
    const double u = pick.uniform() * pj;
    double acc = 0;
    std::uint64_t i = 0;
    for (; i + 1 < na; ++i) {
      acc += std::max(0.0, (*probs)[i]);
      if (u < acc) break;
    }
    while (i > 0 && (*probs)[i] <= 0) --i;
    ++out.accepted;
    out.bitstrings.push_back(layout.bitstring(j, i));
    out.batch_of_sample.push_back(j);
    out.acceptance_of_sample.push_back(t);
  }
  return out;
}

double estimate_epsilon_gamma(double batch_size, double batch_count, double alpha) {
  if (!(batch_size >= 1) || !(alpha > 1) || !(batch_count >= 1)) {
    throw InputError("need N_A >= 1, N_B >= 1 and alpha > 1");
  }
  if (std::isinf(alpha)) return 0.0;
  try {
    return batch_count * boost::math::gamma_q(batch_size, alpha * batch_size);
  } catch (const std::underflow_error&) {
    return 0.0;
  }
}

double expected_truncated_mass(double batch_size, double alpha) {
  if (!(batch_size >= 1) || !(alpha > 1)) throw InputError("need N_A >= 1 and alpha > 1");
  if (std::isinf(alpha)) return 0.0;
  try {
    const double x = alpha * batch_size;
    return std::max(0.0, boost::math::gamma_q(batch_size + 1, x) -
                             alpha * boost::math::gamma_q(batch_size, x));
  } catch (const std::underflow_error&) {
    return 0.0;
  }
}

EpsilonEstimate estimate_epsilon_empirical(const std::vector<double>& masses, double alpha,
                                           double batch_count) {
  if (masses.empty()) throw InputError("no batch masses");
  std::vector<double> excess;
  excess.reserve(masses.size());
  for (double p : masses) excess.push_back(batch_count * std::max(0.0, p - alpha / batch_count));
  const Moments m = moments(excess);
  return {m.mean, m.standard_error()};
}

double variational_distance_bound(double epsilon) {
  if (!(epsilon >= 0)) throw InputError("epsilon must be nonnegative");
  return epsilon;
}

std::optional<double> fidelity_degradation_bound(double fidelity, double distance) {
  if (!(fidelity > 0) || !(distance >= 0)) throw InputError("need f > 0 and d >= 0");
  if (!(distance < fidelity / 16)) return std::nullopt;
  return fidelity * (1.0 - 4.0 * std::sqrt(distance / fidelity));
}

std::vector<double> sampler_output_law(const std::vector<double>& p, const BatchLayout& layout,
                                       double alpha) {
  const std::uint64_t nb = layout.batch_count();
  const std::uint64_t na = layout.batch_size();
  if (p.size() != nb * na) throw InputError("distribution size does not match the layout");
  const double eps = truncated_mass(p, layout, alpha);
  std::vector<double> out(p.size(), 0.0);
  for (std::uint64_t j = 0; j < nb; ++j) {
    double pj = 0;
    for (std::uint64_t i = 0; i < na; ++i) pj += p[layout.index(j, i)];
    if (pj <= 0) continue;
    const double kept = std::min(pj, alpha / static_cast<double>(nb));
    for (std::uint64_t i = 0; i < na; ++i) {
      const std::uint64_t x = layout.index(j, i);
      out[x] = kept * (p[x] / pj) / (1.0 - eps);
    }
  }
  return out;
}

double truncated_mass(const std::vector<double>& p, const BatchLayout& layout, double alpha) {
  const std::uint64_t nb = layout.batch_count();
  const std::uint64_t na = layout.batch_size();
  if (p.size() != nb * na) throw InputError("distribution size does not match the layout");
  double eps = 0;
  for (std::uint64_t j = 0; j < nb; ++j) {
    double pj = 0;
    for (std::uint64_t i = 0; i < na; ++i) pj += p[layout.index(j, i)];
    eps += std::max(0.0, pj - alpha / static_cast<double>(nb));
  }
  return eps;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw InputError("distribution sizes differ");
  double d = 0;
  for (std::size_t i = 0; i < p.size(); ++i) d += std::abs(p[i] - q[i]);
  return 0.5 * d;
}

}  // namespace slicesim
