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

// Finite local randomizers as dense row-stochastic matrices P(z | x), with
// rows indexed by the canonical hypercube encoding of x and columns by
// message. Privacy is pure epsilon-DP measured in nats.

#ifndef LDPSEP_CHANNEL_HPP_
#define LDPSEP_CHANNEL_HPP_

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>

#include <Eigen/Core>

#include "ldpsep/random.hpp"

namespace ldpsep {

inline constexpr int kMaxChannelDim = 12;
inline constexpr double kRowSumTolerance = 1e-12;

class Channel {
 public:
  // Takes a 2^d x m matrix. Throws std::invalid_argument if the row count is
  // not a power of two in [2, 2^kMaxChannelDim], m < 1, an entry is negative
  // or a row sum is off by more than kRowSumTolerance.
  explicit Channel(Eigen::MatrixXd probabilities);

  int input_dim() const { return input_dim_; }
  Eigen::Index num_inputs() const { return probabilities_.rows(); }
  Eigen::Index alphabet_size() const { return probabilities_.cols(); }
  const Eigen::MatrixXd& probabilities() const { return probabilities_; }
  double operator()(std::uint64_t x, Eigen::Index z) const {
    return probabilities_(static_cast<Eigen::Index>(x), z);
  }

 private:
  int input_dim_;
  Eigen::MatrixXd probabilities_;
};

struct PrivacyAudit {
  double epsilon = 0.0;  // +inf when some P(z|x) > 0 = P(z|x')
  Eigen::Index message = 0;
  std::uint64_t input = 0;        // maximizes P(z | .)
  std::uint64_t other_input = 0;  // minimizes P(z | .)

  bool infinite() const { return epsilon == std::numeric_limits<double>::infinity(); }
};

// Exact pure-DP level: max over z and x, x' of ln P(z|x) / P(z|x'), with
// 0/0 counted as ratio 1. Works on any nonnegative matrix, so it also audits
// compressed or unnormalised representations.
PrivacyAudit audit_epsilon(const Eigen::Ref<const Eigen::MatrixXd>& rows);
PrivacyAudit audit_epsilon(const Channel& ch);

// Probability of reporting the true bit under epsilon randomized response.
double keep_probability(double epsilon);

// 2 x 2 randomized response on one sign. Column order matches the input
// encoding: column 0 reports -1, column 1 reports +1.
Channel rr_bit(double epsilon);

// Message for reporting bit y in {-1, +1} on coordinate j.
inline Eigen::Index coordinate_message(int coordinate, int bit) {
  return 2 * static_cast<Eigen::Index>(coordinate) + (bit > 0 ? 1 : 0);
}

// Pick j uniformly, release randomized response on x_j; alphabet size 2d.
Channel coordinate_sampling_rr(int dim, double epsilon);

// Independent rr_bit(epsilon / d) on every coordinate; alphabet size 2^d.
Channel full_rr(int dim, double epsilon);

// Message distribution for an input distribution over the 2^d points.
Eigen::VectorXd push_forward(const Channel& ch,
                             const Eigen::Ref<const Eigen::VectorXd>& input);

// Random channel whose audited epsilon never exceeds `epsilon`. Rows are a
// shared base row tilted by per-entry factors in [e^{-s eps/2}, e^{s eps/2}]
// and renormalised; the tilt scale s in (0, 1] is the largest the audit
// accepts, found by bisection. dim <= 8.
Channel random_dp_channel(int dim, double epsilon, Eigen::Index alphabet_size,
                          Rng& rng);

// Plain-text format: a header line "d m" then 2^d lines of m probabilities.
Channel read_channel(std::istream& in);
void write_channel(std::ostream& out, const Channel& ch);
Channel load_channel(const std::string& path);
void save_channel(const std::string& path, const Channel& ch);

}  // namespace ldpsep

#endif  // LDPSEP_CHANNEL_HPP_
