// Copyright 2026 The ldpsep Authors
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

#ifndef LDPSEP_RANDOM_HPP_
#define LDPSEP_RANDOM_HPP_

#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace ldpsep {

// All samplers take an externally owned engine. Every distribution below is
// derived from raw 64-bit engine output so draws are identical across
// standard library implementations.
using Rng = std::mt19937_64;

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, bound). Rejection keeps it unbiased.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % bound;
}

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

// Standard Laplace (scale 1) by inverse CDF.
inline double standard_laplace(Rng& rng) {
  double u;
  do {
    u = uniform01(rng) - 0.5;
  } while (u == -0.5);
  const double magnitude = -std::log1p(-2.0 * std::abs(u));
  return u < 0 ? -magnitude : magnitude;
}

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stable seed for one trial of one grid point. Doubles are hashed by their
// bit pattern.
inline std::uint64_t derive_seed(std::uint64_t master, int dim, double alpha,
                                 double epsilon, long long n,
                                 long long trial) {
  std::uint64_t h = mix64(master);
  for (std::uint64_t word :
       {static_cast<std::uint64_t>(dim), std::bit_cast<std::uint64_t>(alpha),
        std::bit_cast<std::uint64_t>(epsilon), static_cast<std::uint64_t>(n),
        static_cast<std::uint64_t>(trial)}) {
    h = mix64(h ^ word);
  }
  return h;
}

}  // namespace ldpsep

#endif  // LDPSEP_RANDOM_HPP_
