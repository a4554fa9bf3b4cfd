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

#ifndef SLICESIM_SAMPLER_H_
#define SLICESIM_SAMPLER_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace slicesim {

/// Split of the output qubits into batch-internal (A) and batch-defining (B)
/// parts. Batch j fixes the B qubits to the bits of j, most significant bit
/// on the lowest B qubit; entry i of a batch sets the A qubits likewise.
class BatchLayout {
 public:
  BatchLayout() = default;
  BatchLayout(int num_qubits, std::vector<int> batch_qubits);

  int num_qubits() const { return num_qubits_; }
  const std::vector<int>& batch_qubits() const { return a_; }  // A, sorted
  const std::vector<int>& fixed_qubits() const { return b_; }  // B, sorted
  std::uint64_t batch_size() const { return std::uint64_t{1} << a_.size(); }   // N_A
  std::uint64_t batch_count() const { return std::uint64_t{1} << b_.size(); }  // N_B

  std::string bitstring(std::uint64_t j, std::uint64_t i) const;
  /// Full-register index (qubit 0 most significant) of entry i of batch j.
  std::uint64_t index(std::uint64_t j, std::uint64_t i) const;

 private:
  int num_qubits_ = 0;
  std::vector<int> a_;
  std::vector<int> b_;
};

struct SamplerConfig {
  double alpha = 2.0;
  std::size_t num_samples = 0;  // m
  std::uint64_t seed = 0;
  bool memoize = true;

  void validate() const;
};

/// Probabilities p_{i,j} of batch j, i in [N_A].
using BatchProvider = std::function<std::vector<double>(std::uint64_t)>;

struct SampleSet {
  std::vector<std::string> bitstrings;
  std::vector<std::uint64_t> batch_of_sample;  // j
  std::vector<double> acceptance_of_sample;    // t_j
  std::vector<double> drawn_masses;            // p_j for every draw, the multiset J
  std::size_t batches_drawn = 0;               // |J|
  std::size_t batches_evaluated = 0;           // provider calls
  std::size_t accepted = 0;

  double acceptance_rate() const;
};

SampleSet sample(const BatchProvider& provider, const BatchLayout& layout,
                 const SamplerConfig& config);

/// N_B Q(N_A, alpha N_A), Q the regularized upper incomplete gamma function.
double estimate_epsilon_gamma(double batch_size, double batch_count, double alpha);

/// E sum_j max(0, p_j - alpha/N_B) for p_j N_B ~ Gamma(N_A, rate N_A):
/// Q(N_A + 1, alpha N_A) - alpha Q(N_A, alpha N_A).
double expected_truncated_mass(double batch_size, double alpha);

struct EpsilonEstimate {
  double value = 0;
  double standard_error = 0;
};

/// N_B * mean over J of max(0, p_j - alpha/N_B).
EpsilonEstimate estimate_epsilon_empirical(const std::vector<double>& masses, double alpha,
                                           double batch_count);

double variational_distance_bound(double epsilon);

/// f (1 - 4 sqrt(d/f)); empty when d >= f/16.
std::optional<double> fidelity_degradation_bound(double fidelity, double distance);

/// Output law of the sampler for a known distribution p (indexed by full
/// register index).
std::vector<double> sampler_output_law(const std::vector<double>& p, const BatchLayout& layout,
                                       double alpha);

/// sum_j max(0, p_j - alpha/N_B) for a known distribution.
double truncated_mass(const std::vector<double>& p, const BatchLayout& layout, double alpha);

double total_variation(const std::vector<double>& p, const std::vector<double>& q);

}  // namespace slicesim

#endif  // SLICESIM_SAMPLER_H_
