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

#ifndef SLICESIM_STATS_H_
#define SLICESIM_STATS_H_

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace slicesim {

struct KsResult {
  double statistic = 0;
  double p_value = 1;
};

/// One-sample Kolmogorov-Smirnov test against a continuous CDF, with the
/// asymptotic Kolmogorov p-value (Stephens' small-sample correction).
KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Survival function of the Kolmogorov distribution.
double kolmogorov_survival(double lambda);

struct ChiSquareResult {
  double statistic = 0;
  double dof = 0;
  double p_value = 1;
};

/// Pearson test; bins with zero expectation must have zero counts.
ChiSquareResult chi_square_test(const std::vector<double>& observed,
                                const std::vector<double>& expected);

struct Histogram {
  double lo = 0;
  double hi = 0;
  std::vector<std::size_t> counts;

  /// "<bin lo> <bin hi> <count>" per line.
  std::string format() const;
};

/// Fixed bin count over [min, max] of the data.
Histogram make_histogram(const std::vector<double>& values, std::size_t bins = 64);

struct Moments {
  double mean = 0;
  double variance = 0;  // unbiased; 0 for fewer than two values
  std::size_t count = 0;

  double standard_error() const;
};

Moments moments(const std::vector<double>& values);

}  // namespace slicesim

#endif  // SLICESIM_STATS_H_
