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

// Distributions on the Boolean hypercube {-1,+1}^d.
//
// Points are enumerated canonically as integers 0 .. 2^d - 1 where bit k is
// set exactly when x_k = +1. Coordinates are 0-based throughout the library.
//
// The hard family mixes the uniform distribution with the uniform
// distribution conditioned on one coordinate:
//
//   P_{alpha,b,j} = alpha * (U | x_j = b) + (1 - alpha) * U
//
// so the biased coordinate has mean alpha * b and every other coordinate is
// an independent fair sign. Averaged over all 2d choices of (b, j) the family
// is exactly uniform.

#ifndef LDPSEP_HYPERCUBE_HPP_
#define LDPSEP_HYPERCUBE_HPP_

#include <cstdint>
#include <ostream>
#include <span>

#include <Eigen/Core>

#include "ldpsep/random.hpp"

namespace ldpsep {

// Largest dimension for which dense 2^d enumeration is offered.
inline constexpr int kMaxEnumerationDim = 20;

using SignMatrix =
    Eigen::Matrix<std::int8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// A vertex b * e_j of the l1 ball, or equivalently a latent pair (B, J).
struct SignedCoordinate {
  int sign = 1;   // -1 or +1
  int index = 0;  // 0-based coordinate

  friend bool operator==(const SignedCoordinate&,
                         const SignedCoordinate&) = default;
  friend std::ostream& operator<<(std::ostream& os, const SignedCoordinate& c) {
    return os << '(' << (c.sign > 0 ? "+1" : "-1") << ", " << c.index << ')';
  }
};

// Position of (b, j) in the canonical candidate order
// +e_0, ..., +e_{d-1}, -e_0, ..., -e_{d-1}.
inline int candidate_slot(SignedCoordinate c, int dim) {
  return (c.sign > 0 ? 0 : dim) + c.index;
}
inline SignedCoordinate candidate_at(int slot, int dim) {
  return slot < dim ? SignedCoordinate{+1, slot}
                    : SignedCoordinate{-1, slot - dim};
}

class HardInstance {
 public:
  // Throws std::invalid_argument unless dim >= 1, alpha in [0, 1],
  // sign in {-1, +1} and 0 <= coordinate < dim.
  HardInstance(int dim, double alpha, int sign, int coordinate);

  int dim() const { return dim_; }
  double alpha() const { return alpha_; }
  int sign() const { return sign_; }
  int coordinate() const { return coordinate_; }
  SignedCoordinate latent() const { return {sign_, coordinate_}; }

  // P(x_j = +1) for the given coordinate.
  double prob_plus(int k) const;

 private:
  int dim_;
  double alpha_;
  int sign_;
  int coordinate_;
};

// n samples stored row-wise; entries are -1 or +1.
class Dataset {
 public:
  explicit Dataset(int dim) : samples_(0, dim) {}
  // Throws std::invalid_argument if any entry is not +-1.
  explicit Dataset(SignMatrix samples);

  long long size() const { return samples_.rows(); }
  int dim() const { return static_cast<int>(samples_.cols()); }
  const SignMatrix& samples() const { return samples_; }
  auto row(long long i) const { return samples_.row(i); }

  // Sum over samples of each coordinate, as doubles.
  Eigen::VectorXd column_sums() const;
  Eigen::VectorXd empirical_mean() const;

 private:
  SignMatrix samples_;
};

// Canonical encoding of a sign vector; throws on entries other than +-1.
std::uint64_t point_index(const Eigen::Ref<const Eigen::VectorXi>& x);
Eigen::VectorXi point_signs(std::uint64_t index, int dim);

double pmf(const HardInstance& inst,
           const Eigen::Ref<const Eigen::VectorXi>& x);
double pmf(const HardInstance& inst, std::uint64_t index);

// Dense pmf over all 2^d points (d <= kMaxEnumerationDim).
Eigen::VectorXd pmf_vector(const HardInstance& inst);
Eigen::VectorXd uniform_pmf_vector(int dim);

// Average of pmf over all 2d latent pairs; identically 2^-d.
double mixture_pmf(int dim, double alpha,
                   const Eigen::Ref<const Eigen::VectorXi>& x);

Eigen::VectorXd coordinate_means(const HardInstance& inst);

Dataset sample(const HardInstance& inst, long long n, Rng& rng);

// Draws a single point into `out` (length dim).
void sample_point(const HardInstance& inst, Rng& rng, std::span<std::int8_t> out);

}  // namespace ldpsep

#endif  // LDPSEP_HYPERCUBE_HPP_
