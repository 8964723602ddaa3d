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

// Exact information-theoretic quantities for a local randomizer facing the
// hard family on {-1,+1}^d.
//
// Notation used below: Z is the message of one user whose sample comes from
// the uniform mixture (which is exactly uniform), Z_{b,j} the message when
// the sample comes from the (b, j) member. For a message z,
//
//   zeta_z(x) = P(z | x) / p_Z(z) - 1
//
// is the centred likelihood ratio whose degree-one Fourier weight controls
// the average chi-square divergence:
//
//   avg_{b,j} chi2(Z_{b,j} || Z) = sum_z p_Z(z) (alpha^2 / d) sum_j zeta_z^({j})^2
//                               <= alpha^2 (e^eps - 1)^2 / d.
//
// Logarithms: divergences are compared in nats, entropies and mutual
// information are reported in bits. Every field name carries its unit.

#ifndef LDPSEP_INFO_HPP_
#define LDPSEP_INFO_HPP_

#include <bit>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "ldpsep/channel.hpp"

namespace ldpsep {

// Boolean Fourier coefficients f^(S) = E_{x~U}[f(x) prod_{k in S} x_k],
// with subsets S and points x both encoded as bitmasks (bit k of x set iff
// x_k = +1). O(2^d d) butterflies.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> wht(
    const Eigen::MatrixBase<Derived>& f) {
  using Scalar = typename Derived::Scalar;
  const auto size = static_cast<std::uint64_t>(f.size());
  if (size == 0 || !std::has_single_bit(size)) {
    throw std::invalid_argument("transform length must be a power of two");
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> c = f;
  for (Eigen::Index half = 1; half < c.size(); half *= 2) {
    for (Eigen::Index block = 0; block < c.size(); block += 2 * half) {
      for (Eigen::Index i = block; i < block + half; ++i) {
        const Scalar minus = c[i];
        const Scalar plus = c[i + half];
        c[i] = plus + minus;
        c[i + half] = plus - minus;
      }
    }
  }
  return c / static_cast<Scalar>(c.size());
}

// f(x) = sum_S f^(S) prod_{k in S} x_k.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> inverse_wht(
    const Eigen::MatrixBase<Derived>& coeffs) {
  using Scalar = typename Derived::Scalar;
  const auto size = static_cast<std::uint64_t>(coeffs.size());
  if (size == 0 || !std::has_single_bit(size)) {
    throw std::invalid_argument("transform length must be a power of two");
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> f = coeffs;
  for (Eigen::Index half = 1; half < f.size(); half *= 2) {
    for (Eigen::Index block = 0; block < f.size(); block += 2 * half) {
      for (Eigen::Index i = block; i < block + half; ++i) {
        const Scalar without = f[i];
        const Scalar with = f[i + half];
        f[i] = without - with;
        f[i + half] = without + with;
      }
    }
  }
  return f;
}

// Summation by recursive halving; fixed association order.
double pairwise_sum(std::span<const double> values);

// Throws std::invalid_argument unless nonnegative with total 1 +- 1e-9.
void check_pmf(const Eigen::Ref<const Eigen::VectorXd>& p);

// sum_z (p - q)^2 / q. +inf when q(z) = 0 < p(z).
double chi_square(const Eigen::Ref<const Eigen::VectorXd>& p,
                  const Eigen::Ref<const Eigen::VectorXd>& q);

struct KlDivergence {
  double nats = 0.0;
  double bits = 0.0;
};

// KL(p || q). Both fields are +inf when q(z) = 0 < p(z).
KlDivergence kl(const Eigen::Ref<const Eigen::VectorXd>& p,
                const Eigen::Ref<const Eigen::VectorXd>& q);

double entropy_bits(const Eigen::Ref<const Eigen::VectorXd>& p);

struct DivergenceReport {
  int dim = 0;
  double alpha = 0.0;
  PrivacyAudit audit;
  // Per latent pair in candidate order (+e_0 .. +e_{d-1}, -e_0 .. -e_{d-1}).
  std::vector<double> chi_square;
  std::vector<double> kl_nats;
  double average_chi_square = 0.0;
  // alpha^2 (e^eps - 1)^2 / d with the audited eps; +inf if eps is.
  double privacy_bound = 0.0;
  double privacy_slack = 0.0;
  // Filled by divergence_report.
  double mutual_information_bits = 0.0;
  long long n = 0;
  double total_information_bits = 0.0;
  double fano_ceiling = 0.0;
  bool fano_saturated = false;
  double theorem_bound = 0.0;
  bool theorem_below_hypothesis = false;
};

// Chi-square and KL of every Z_{b,j} against Z, their average and the
// privacy-derived bound.
DivergenceReport average_chi_square(const Channel& ch, double alpha);

struct MutualInformation {
  double joint_bits = 0.0;        // KL(joint (B,J,Z) || (B,J) x Z)
  double conditional_bits = 0.0;  // E_{b,j} KL(Z_{b,j} || Z)
};

// I(Z; B, J) for one message, by both routes.
MutualInformation mutual_information_per_sample(const Channel& ch, double alpha);

// Full report: divergences, mutual information, Fano ceiling for n users and
// the closed-form sample-size bound at the audited epsilon.
DivergenceReport divergence_report(const Channel& ch, double alpha, long long n);

// zeta_z for message z; requires p_Z(z) > 0.
Eigen::VectorXd zeta(const Channel& ch, Eigen::Index z);

struct ShiftIdentityCheck {
  double max_identity_residual = 0.0;  // |LHS - (alpha^2/d) sum_j zeta^({j})^2|
  double min_slack = 0.0;              // alpha^2 ||zeta||_inf^2 / d - LHS
  double max_slack = 0.0;
  double max_parseval_residual = 0.0;
  double max_inverse_residual = 0.0;
  double max_zero_mean_residual = 0.0;
  Eigen::Index skipped_messages = 0;  // p_Z(z) = 0
};

// LHS(z) = E_{b,j}[(E_{P_{b,j}} zeta_z - E_U zeta_z)^2] by direct
// enumeration, compared against its Fourier form and sup-norm bound.
ShiftIdentityCheck check_average_shift(const Channel& ch, double alpha);

struct SupNormCheck {
  double max_sup_norm = 0.0;  // max_z ||zeta_z||_inf
  double bound = 0.0;         // e^{eps} - 1 at the audited eps
  double ratio = 0.0;
  Eigen::Index skipped_messages = 0;
  bool holds = true;  // max_sup_norm <= bound + 1e-10
};

SupNormCheck check_zeta_sup_norm(const Channel& ch);

// n * I: information carried by n conditionally independent messages.
double tensorized_mi_bound(double info_per_sample_bits, long long n);

struct FanoBound {
  double value = 0.0;      // (I + 1) / log2(k), unclamped
  bool saturated = false;  // value > 1, the bound says nothing
};

FanoBound fano_success_bound(double total_info_bits, long long outcomes);

struct TheoremBound {
  double samples = 0.0;  // d log2(2d) / (6 alpha^2 (e^eps - 1)^2); +inf if alpha or eps is 0
  bool below_hypothesis = false;  // d < 32
};

TheoremBound theorem_lower_bound(int dim, double alpha, double epsilon);

}  // namespace ldpsep

#endif  // LDPSEP_INFO_HPP_
