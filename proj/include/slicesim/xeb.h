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

#ifndef SLICESIM_XEB_H_
#define SLICESIM_XEB_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slicesim/circuit.h"
#include "slicesim/fidelity.h"
#include "slicesim/stats.h"
#include "slicesim/tensornet.h"
#include "slicesim/treeopt.h"

namespace slicesim {

struct XebReport {
  std::size_t count = 0;
  int num_qubits = 0;
  double probability_sum = 0;
  double mean_normalized = 0;  // 2^n * mean(p)
  double fidelity = 0;         // mean_normalized - 1
  double standard_error = 0;   // 2^n * sample stddev / sqrt(count)
};

XebReport xeb_fidelity(const std::vector<double>& probabilities, int num_qubits);

struct SpoofConfig {
  std::size_t num_bitstrings = 0;           // N
  double fidelity = 1.0;                    // f
  std::optional<double> ratio;              // r; selects floor(r 2^b) instead of N
  std::optional<int> batch_bits;            // b; default ceil(log2(10 N)), at most n

  int resolved_batch_bits(int num_qubits) const;
  std::size_t resolved_count(int num_qubits) const;
  void validate(int num_qubits) const;
};

struct SpoofResult {
  std::vector<std::string> bitstrings;  // by descending |amplitude|, ties by bitstring
  AmplitudeBatch batch;
  std::optional<SlicePlan> slices;      // empty when f = 1
  double achieved_fidelity = 1.0;
  double ratio = 1.0;                   // selected / 2^b
};

SpoofResult spoof(const Circuit& c, const SpoofConfig& config, const PlannerConfig& planner,
                  const ContractOptions& contract = {}, const NetworkOptions& options = {});

/// Indices of the `count` largest-magnitude amplitudes, ties by index.
std::vector<std::size_t> top_amplitudes(const std::vector<Complex>& amplitudes, std::size_t count);

/// -f ln r.
double expected_spoof_xeb(double fidelity, double ratio);

/// Mean of the k-th largest of N iid Exp(lambda) draws: (H_N - H_{k-1}) / lambda.
double order_stat_expectation(std::size_t n, std::size_t k, double lambda);

struct PorterThomasReport {
  KsResult exponential;             // 2^n p against Exp(1)
  std::optional<KsResult> gamma;    // N_B p_j against Gamma(N_A, rate N_A)
  Histogram bitstring_histogram;
  std::optional<Histogram> batch_histogram;
};

PorterThomasReport porter_thomas_diagnostics(const std::vector<double>& bitstring_probabilities,
                                             const std::vector<double>& batch_probabilities,
                                             int num_qubits, double batch_size);

struct NormStatistics {
  double normalized_stddev = 0;  // sqrt(Var(2^k R))
  double min = 0;                // of 2^k R
  double max = 0;
};

NormStatistics norm_statistics(const NormTable& table);

}  // namespace slicesim

#endif  // SLICESIM_XEB_H_
