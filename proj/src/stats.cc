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

#include "slicesim/stats.h"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>

#include "slicesim/errors.h"
#include "slicesim/formats.h"

namespace slicesim {

double kolmogorov_survival(double lambda) {
  if (lambda <= 0) return 1.0;
  if (lambda < 0.2) return 1.0;
  double sum = 0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 ? 1.0 : -1.0) * term;
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw InputError("KS test needs samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  const double sn = std::sqrt(n);
  return {d, kolmogorov_survival((sn + 0.12 + 0.11 / sn) * d)};
}

ChiSquareResult chi_square_test(const std::vector<double>& observed,
                                const std::vector<double>& expected) {
  if (observed.size() != expected.size()) throw InputError("chi-square bin counts differ");
  ChiSquareResult r;
  std::size_t bins = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0) {
      if (observed[i] > 0) {
        r.statistic = std::numeric_limits<double>::infinity();
        r.p_value = 0;
      }
      continue;
    }
    const double diff = observed[i] - expected[i];
    r.statistic += diff * diff / expected[i];
    ++bins;
  }
  if (bins < 2) throw InputError("chi-square test needs at least two populated bins");
  r.dof = static_cast<double>(bins - 1);
  if (std::isinf(r.statistic)) return r;
  boost::math::chi_squared dist(r.dof);
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  return r;
}

std::string Histogram::format() const {
  std::string out;
  const double width = counts.empty() ? 0.0 : (hi - lo) / static_cast<double>(counts.size());
  for (std::size_t b = 0; b < counts.size(); ++b) {
    out += format_double(lo + width * b) + " " + format_double(lo + width * (b + 1)) + " " +
           std::to_string(counts[b]) + "\n";
  }
  return out;
}

Histogram make_histogram(const std::vector<double>& values, std::size_t bins) {
  if (bins == 0) throw InputError("histogram needs at least one bin");
  Histogram h;
  h.counts.assign(bins, 0);
  if (values.empty()) return h;
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  h.lo = *mn;
  h.hi = *mx > *mn ? *mx : *mn + 1.0;
  const double width = (h.hi - h.lo) / static_cast<double>(bins);
  for (double v : values) {
    auto b = static_cast<std::size_t>((v - h.lo) / width);
    h.counts[std::min(b, bins - 1)]++;
  }
  return h;
}

double Moments::standard_error() const {
  return count == 0 ? 0.0 : std::sqrt(variance / static_cast<double>(count));
}

Moments moments(const std::vector<double>& values) {
  Moments m;
  m.count = values.size();
  if (values.empty()) return m;
  // Welford.
  double mean = 0;
  double m2 = 0;
  std::size_t k = 0;
  for (double v : values) {
    ++k;
    const double delta = v - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (v - mean);
  }
  m.mean = mean;
  m.variance = k > 1 ? m2 / static_cast<double>(k - 1) : 0.0;
  return m;
}

}  // namespace slicesim
