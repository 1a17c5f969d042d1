// Copyright 2026 The tcur Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TCUR_RNG_HPP
#define TCUR_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace tcur {

// Seeded Mersenne Twister with hand-rolled draw logic so that every sampled
// sequence is identical across standard libraries and platforms.  The
// standard distributions (uniform_int_distribution, normal_distribution)
// are implementation-defined and would break run-to-run reproducibility of
// serialized results between toolchains.
class RandomEngine {
 public:
  explicit RandomEngine(std::uint64_t seed)
      : gen_(static_cast<std::mt19937::result_type>(seed)) {}

  // Unbiased integer in [0, n), n >= 1, by rejection sampling.
  std::uint32_t uniform_below(std::uint32_t n) {
    if (n <= 1) return 0;
    // Largest count of full n-sized blocks below 2^32; draws past it are
    // rejected so the modulo stays unbiased.
    const std::uint32_t bound = 0xFFFFFFFFu - (0xFFFFFFFFu % n);
    for (;;) {
      const std::uint32_t r = gen_();
      if (r < bound) return r % n;
    }
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() {
    const std::uint64_t hi = gen_();
    const std::uint64_t lo = gen_();
    const std::uint64_t r = ((hi << 32) | lo) >> 11;
    return static_cast<double>(r) * 0x1.0p-53;
  }

  // Standard normal draw via Box-Muller; pairs are cached.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = (uniform01() + 0x1.0p-54);  // keep log() away from 0
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  // Fisher-Yates permutation of {0, ..., n-1}.
  std::vector<int> permutation(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) {
      const auto j = static_cast<int>(uniform_below(static_cast<std::uint32_t>(i) + 1));
      std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
    }
    return p;
  }

 private:
  std::mt19937 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace tcur

#endif  // TCUR_RNG_HPP
