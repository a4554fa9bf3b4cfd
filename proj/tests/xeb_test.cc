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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "slicesim/circuit.h"
#include "slicesim/errors.h"
#include "slicesim/fidelity.h"
#include "slicesim/oracle.h"
#include "slicesim/rng.h"
#include "slicesim/stats.h"
#include "slicesim/xeb.h"
#include "test_util.h"

namespace slicesim {
namespace {

TEST(Xeb, Definition) {
  EXPECT_NEAR(xeb_fidelity(std::vector<double>(10, 1.0 / 16), 4).fidelity, 0.0, 1e-15);
  const XebReport r = xeb_fidelity({0.8}, 1);
  EXPECT_NEAR(r.fidelity, 0.6, 1e-15);
  EXPECT_EQ(r.count, 1u);
  const XebReport s = xeb_fidelity({0.1, 0.3}, 2);
  EXPECT_NEAR(s.fidelity, 4 * 0.2 - 1, 1e-15);
  EXPECT_NEAR(s.standard_error, 4 * std::sqrt(0.02) / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s.fidelity, std::ldexp(1.0, 2) / 2 * s.probability_sum - 1, 1e-15);
  EXPECT_THROW(xeb_fidelity({}, 2), InputError);
  EXPECT_THROW(xeb_fidelity({1.5}, 2), InputError);
}

TEST(Xeb, ExactSamplesScoreOne) {
  const Circuit c = make_random_circuit({3, 4, 12, 31, true});
  const auto samples = exact_sample(c, 100000, 3);
  const XebReport r = xeb_fidelity(exact_probabilities(c, samples), 12);
  EXPECT_NEAR(r.fidelity, 1.0, 3 * r.standard_error);
}

TEST(Spoofing, Expectations) {
  EXPECT_EQ(expected_spoof_xeb(0.7, 1.0), 0.0);
  EXPECT_NEAR(expected_spoof_xeb(0.5, std::exp(-1.0)), 0.5, 1e-15);
  EXPECT_NEAR(expected_spoof_xeb(0.002, 0.1), 0.0046, 1e-5);
  EXPECT_THROW(expected_spoof_xeb(0.5, 0.0), InputError);
}

TEST(Spoofing, ConfigResolution) {
  SpoofConfig cfg;
  cfg.num_bitstrings = 100;
  EXPECT_EQ(cfg.resolved_batch_bits(20), 10);
  EXPECT_EQ(cfg.resolved_batch_bits(8), 8);
  cfg.ratio = 0.5;
  cfg.batch_bits = 4;
  EXPECT_EQ(cfg.resolved_count(20), 8u);
  SpoofConfig too_many;
  too_many.num_bitstrings = 100;
  too_many.batch_bits = 5;
  EXPECT_THROW(too_many.validate(12), InputError);
}

TEST(Spoofing, TopAmplitudesTieBreak) {
  const std::vector<Complex> a{0.1, -0.5, 0.5, 0.2};
  EXPECT_EQ(top_amplitudes(a, 2), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(top_amplitudes(a, 9).size(), 4u);
}

TEST(Spoofing, SelectAllEqualsBatch) {
  const Circuit c = make_random_circuit({2, 4, 8, 9, true});
  SpoofConfig cfg;
  cfg.batch_bits = 5;
  cfg.ratio = 1.0;
  const SpoofResult r = spoof(c, cfg, testing::small_planner(4));
  ASSERT_EQ(r.bitstrings.size(), 32u);
  std::vector<std::string> all;
  for (std::size_t i = 0; i < 32; ++i) all.push_back(r.batch.spec.bitstring(i));
  const double xs = xeb_fidelity(exact_probabilities(c, r.bitstrings), 8).fidelity;
  const double xb = xeb_fidelity(exact_probabilities(c, all), 8).fidelity;
  EXPECT_NEAR(xs, xb, 1e-12);
}

TEST(Spoofing, TopSetXebIsMonotone) {
  const Circuit c = make_random_circuit({3, 3, 10, 4, true});
  SpoofConfig cfg;
  cfg.batch_bits = 9;
  cfg.ratio = 1.0;
  const SpoofResult r = spoof(c, cfg, testing::small_planner(4));
  const auto p = exact_probabilities(c, r.bitstrings);
  double prev = INFINITY;
  double sum = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    sum += p[k];
    const double mean = sum / static_cast<double>(k + 1);
    EXPECT_LE(mean, prev + 1e-15);
    prev = mean;
  }
}

TEST(OrderStatistics, ExactHarmonicForm) {
  EXPECT_NEAR(order_stat_expectation(5, 5, 1.0), 0.2, 1e-15);
  EXPECT_NEAR(order_stat_expectation(1000, 1, 1.0), 7.485470860550345, 1e-12);
  EXPECT_NEAR(order_stat_expectation(1000, 1, 2.0), 7.485470860550345 / 2, 1e-12);
  for (std::size_t n : {10u, 100u, 1000u}) {
    for (std::size_t k = 1; k <= n; k *= 3) {
      const double gap = order_stat_expectation(n, k, 1.0) - (std::log(double(n)) - std::log(double(k)));
      EXPECT_LE(std::abs(gap), 1.0 + 1.0 / k);
    }
  }
  EXPECT_THROW(order_stat_expectation(3, 4, 1.0), InputError);
}

TEST(OrderStatistics, MatchesMonteCarlo) {
  CounterRng rng = make_rng(1, RngStream::kSynthetic);
  std::exponential_distribution<double> e(1.0);
  const int trials = 20000;
  std::vector<double> top(trials), third(trials);
  for (int t = 0; t < trials; ++t) {
    std::vector<double> x(50);
    for (double& v : x) v = e(rng);
    std::sort(x.begin(), x.end(), std::greater<>());
    top[t] = x[0];
    third[t] = x[2];
  }
  const Moments a = moments(top);
  const Moments b = moments(third);
  EXPECT_NEAR(a.mean, order_stat_expectation(50, 1, 1.0), 3 * a.standard_error());
  EXPECT_NEAR(b.mean, order_stat_expectation(50, 3, 1.0), 3 * b.standard_error());
}

TEST(PorterThomas, DeepCircuitPassesShallowFails) {
  const Circuit deep = make_random_circuit({3, 4, 14, 6, true});
  const auto pd = exact_distribution(deep);
  EXPECT_GT(porter_thomas_diagnostics(pd, {}, 12, 64).exponential.p_value, 0.01);
  const Circuit shallow = make_random_circuit({3, 4, 2, 6, true});
  const auto ps = exact_distribution(shallow);
  EXPECT_LT(porter_thomas_diagnostics(ps, {}, 12, 64).exponential.p_value, 0.01);
}

TEST(PorterThomas, NullPValuesLookUniform) {
  CounterRng rng = make_rng(2, RngStream::kSynthetic);
  std::exponential_distribution<double> e(1.0);
  std::vector<double> pvalues;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> p(1024);
    for (double& v : p) v = e(rng) / 1024;
    pvalues.push_back(porter_thomas_diagnostics(p, {}, 10, 16).exponential.p_value);
  }
  const KsResult u = ks_test(pvalues, [](double x) { return std::clamp(x, 0.0, 1.0); });
  EXPECT_GT(u.p_value, 0.001);
}

TEST(PorterThomas, GammaBatches) {
  CounterRng rng = make_rng(3, RngStream::kSynthetic);
  std::gamma_distribution<double> g(16.0, 1.0 / 16.0);
  std::vector<double> batches(2000);
  for (double& v : batches) v = g(rng) / 256.0;
  const auto r = porter_thomas_diagnostics({1.0 / 4096}, batches, 12, 16);
  ASSERT_TRUE(r.gamma.has_value());
  EXPECT_GT(r.gamma->p_value, 0.01);
  EXPECT_EQ(r.batch_histogram->counts.size(), 64u);
}

TEST(NormStats, Basics) {
  NormTable uniform;
  uniform.partial = VertexSet{VertexId{0}, VertexId{1}};
  uniform.values = {0.25, 0.25, 0.25, 0.25};
  const NormStatistics u = norm_statistics(uniform);
  EXPECT_NEAR(u.normalized_stddev, 0.0, 1e-15);
  EXPECT_EQ(u.min, 1.0);
  EXPECT_EQ(u.max, 1.0);
  NormTable skew = uniform;
  skew.values = {0.5, 0.5, 0.0, 0.0};
  const NormStatistics s = norm_statistics(skew);
  EXPECT_NEAR(s.normalized_stddev, 1.0, 1e-15);
  EXPECT_EQ(s.max, 2.0);
  skew.values = {0.5, 0.5, 0.5, 0.0};
  EXPECT_THROW(norm_statistics(skew), InvariantError);
}

}  // namespace
}  // namespace slicesim
