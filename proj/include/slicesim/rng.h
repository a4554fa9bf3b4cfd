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

#ifndef SLICESIM_RNG_H_
#define SLICESIM_RNG_H_

#include <cstdint>
#include <limits>

namespace slicesim {

/// Counter-based generator: output k of stream s is a pure function of
/// (seed, s, k). Independent streams never share state, so work can be split
/// across threads without changing any draw.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Well-known stream ids so that each consumer of randomness draws from its
/// own sequence.
enum class RngStream : std::uint64_t {
  kCircuitGeneration = 1,
  kAnnealing = 2,
  kSamplerBatches = 3,
  kSamplerAccept = 4,
  kSamplerPick = 5,
  kOracleSampling = 6,
  kSynthetic = 7,
};

inline CounterRng make_rng(std::uint64_t seed, RngStream stream) {
  return CounterRng(seed, static_cast<std::uint64_t>(stream));
}

}  // namespace slicesim

#endif  // SLICESIM_RNG_H_
