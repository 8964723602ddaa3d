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

#include "ldpsep/info.hpp"

#include <cmath>
#include <numbers>

#include "ldpsep/hypercube.hpp"

namespace ldpsep {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_same_support(const Eigen::Ref<const Eigen::VectorXd>& p,
                        const Eigen::Ref<const Eigen::VectorXd>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("pmf lengths differ");
  check_pmf(p);
  check_pmf(q);
}

// 2d x 2^d matrix whose rows are the pmfs of the hard family, in candidate
// order.
Eigen::MatrixXd family_pmfs(int dim, double alpha) {
  Eigen::MatrixXd rows(2 * dim, Eigen::Index{1} << dim);
  for (int slot = 0; slot < 2 * dim; ++slot) {
    const SignedCoordinate c = candidate_at(slot, dim);
    rows.row(slot) = pmf_vector(HardInstance(dim, alpha, c.sign, c.index)).transpose();
  }
  return rows;
}

double sum_of(const Eigen::Ref<const Eigen::VectorXd>& v) {
  return pairwise_sum(std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
}

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in [0, 1]");
  }
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

void check_pmf(const Eigen::Ref<const Eigen::VectorXd>& p) {
  if (p.size() == 0 || !p.allFinite() || (p.array() < 0.0).any() ||
      std::abs(p.sum() - 1.0) > 1e-9) {
    throw std::invalid_argument("not a probability vector");
  }
}

double chi_square(const Eigen::Ref<const Eigen::VectorXd>& p,
                  const Eigen::Ref<const Eigen::VectorXd>& q) {
  check_same_support(p, q);
  Eigen::VectorXd terms = Eigen::VectorXd::Zero(p.size());
  for (Eigen::Index z = 0; z < p.size(); ++z) {
    if (q[z] == 0.0) {
      if (p[z] > 0.0) return kInf;
      continue;
    }
    const double diff = p[z] - q[z];
    terms[z] = diff * diff / q[z];
  }
  return sum_of(terms);
}

KlDivergence kl(const Eigen::Ref<const Eigen::VectorXd>& p,
                const Eigen::Ref<const Eigen::VectorXd>& q) {
  check_same_support(p, q);
  Eigen::VectorXd terms = Eigen::VectorXd::Zero(p.size());
  for (Eigen::Index z = 0; z < p.size(); ++z) {
    if (p[z] == 0.0) continue;
    if (q[z] == 0.0) return {kInf, kInf};
    terms[z] = p[z] * std::log(p[z] / q[z]);
  }
  // Individual terms may be negative; the total is not.
  const double nats = std::max(0.0, sum_of(terms));
  return {nats, nats / std::numbers::ln2};
}

double entropy_bits(const Eigen::Ref<const Eigen::VectorXd>& p) {
  check_pmf(p);
  Eigen::VectorXd terms = Eigen::VectorXd::Zero(p.size());
  for (Eigen::Index z = 0; z < p.size(); ++z) {
    if (p[z] > 0.0) terms[z] = -p[z] * std::log2(p[z]);
  }
  return sum_of(terms);
}

DivergenceReport average_chi_square(const Channel& ch, double alpha) {
  check_alpha(alpha);
  const int d = ch.input_dim();
  DivergenceReport report;
  report.dim = d;
  report.alpha = alpha;
  report.audit = audit_epsilon(ch);

  const Eigen::VectorXd marginal = push_forward(ch, uniform_pmf_vector(d));
  // Row (b, j) of `conditionals` is the message pmf under P_{b,j}.
  const Eigen::MatrixXd conditionals = family_pmfs(d, alpha) * ch.probabilities();
  for (Eigen::Index slot = 0; slot < conditionals.rows(); ++slot) {
    const Eigen::VectorXd row = conditionals.row(slot).transpose();
    report.chi_square.push_back(chi_square(row, marginal));
    report.kl_nats.push_back(kl(row, marginal).nats);
  }
  report.average_chi_square =
      pairwise_sum(report.chi_square) / static_cast<double>(report.chi_square.size());

  if (report.audit.infinite()) {
    report.privacy_bound = kInf;
  } else {
    const double spread = std::expm1(report.audit.epsilon);
    report.privacy_bound = alpha * alpha * spread * spread / d;
  }
  report.privacy_slack = report.privacy_bound - report.average_chi_square;
  return report;
}

MutualInformation mutual_information_per_sample(const Channel& ch, double alpha) {
  check_alpha(alpha);
  const int d = ch.input_dim();
  const Eigen::MatrixXd conditionals = family_pmfs(d, alpha) * ch.probabilities();
  const double pairs = static_cast<double>(conditionals.rows());

  // Joint route: the joint law of (pair, message) against the product of its
  // own marginals.
  const Eigen::MatrixXd joint = conditionals / pairs;
  const Eigen::VectorXd pair_marginal = joint.rowwise().sum();
  const Eigen::RowVectorXd message_marginal = joint.colwise().sum();
  const Eigen::MatrixXd product = pair_marginal * message_marginal;
  const Eigen::Map<const Eigen::VectorXd> joint_flat(joint.data(), joint.size());
  const Eigen::Map<const Eigen::VectorXd> product_flat(product.data(), product.size());

  MutualInformation mi;
  mi.joint_bits = kl(joint_flat, product_flat).bits;

  // Chain-rule route: average divergence from the uniform-input marginal.
  const Eigen::VectorXd marginal = push_forward(ch, uniform_pmf_vector(d));
  std::vector<double> per_pair;
  for (Eigen::Index slot = 0; slot < conditionals.rows(); ++slot) {
    per_pair.push_back(kl(conditionals.row(slot).transpose(), marginal).bits);
  }
  mi.conditional_bits = pairwise_sum(per_pair) / pairs;
  return mi;
}

DivergenceReport divergence_report(const Channel& ch, double alpha, long long n) {
  if (n < 0) throw std::invalid_argument("sample count must be nonnegative");
  DivergenceReport report = average_chi_square(ch, alpha);
  report.mutual_information_bits = mutual_information_per_sample(ch, alpha).joint_bits;
  report.n = n;
  report.total_information_bits = tensorized_mi_bound(report.mutual_information_bits, n);
  const FanoBound fano = fano_success_bound(report.total_information_bits, 2LL * report.dim);
  report.fano_ceiling = fano.value;
  report.fano_saturated = fano.saturated;
  const TheoremBound theorem =
      theorem_lower_bound(report.dim, alpha, report.audit.epsilon);
  report.theorem_bound = theorem.samples;
  report.theorem_below_hypothesis = theorem.below_hypothesis;
  return report;
}

Eigen::VectorXd zeta(const Channel& ch, Eigen::Index z) {
  if (z < 0 || z >= ch.alphabet_size()) throw std::invalid_argument("message out of range");
  const double marginal = ch.probabilities().col(z).mean();
  if (!(marginal > 0.0)) throw std::invalid_argument("message has zero probability");
  return (ch.probabilities().col(z).array() / marginal - 1.0).matrix();
}

ShiftIdentityCheck check_average_shift(const Channel& ch, double alpha) {
  check_alpha(alpha);
  const int d = ch.input_dim();
  const Eigen::MatrixXd family = family_pmfs(d, alpha);
  const double pairs = static_cast<double>(family.rows());

  ShiftIdentityCheck check;
  bool first = true;
  for (Eigen::Index z = 0; z < ch.alphabet_size(); ++z) {
    if (!(ch.probabilities().col(z).mean() > 0.0)) {
      ++check.skipped_messages;
      continue;
    }
    const Eigen::VectorXd zeta_z = zeta(ch, z);
    const double uniform_mean = zeta_z.mean();
    const Eigen::VectorXd coeffs = wht(zeta_z);

    const Eigen::VectorXd shifts = (family * zeta_z).array() - uniform_mean;
    const double lhs = shifts.squaredNorm() / pairs;

    double degree_one = 0.0;
    for (int j = 0; j < d; ++j) {
      const double c = coeffs[Eigen::Index{1} << j];
      degree_one += c * c;
    }
    const double identity = alpha * alpha * degree_one / d;
    const double sup = zeta_z.lpNorm<Eigen::Infinity>();
    const double slack = alpha * alpha * sup * sup / d - lhs;

    check.max_identity_residual = std::max(check.max_identity_residual, std::abs(lhs - identity));
    check.max_parseval_residual = std::max(
        check.max_parseval_residual,
        std::abs(coeffs.squaredNorm() - zeta_z.squaredNorm() / static_cast<double>(zeta_z.size())));
    check.max_inverse_residual =
        std::max(check.max_inverse_residual,
                 (inverse_wht(coeffs) - zeta_z).lpNorm<Eigen::Infinity>());
    check.max_zero_mean_residual = std::max(check.max_zero_mean_residual, std::abs(uniform_mean));
    check.min_slack = first ? slack : std::min(check.min_slack, slack);
    check.max_slack = first ? slack : std::max(check.max_slack, slack);
    first = false;
  }
  return check;
}

SupNormCheck check_zeta_sup_norm(const Channel& ch) {
  SupNormCheck check;
  const PrivacyAudit audit = audit_epsilon(ch);
  check.bound = audit.infinite() ? kInf : std::expm1(audit.epsilon);
  for (Eigen::Index z = 0; z < ch.alphabet_size(); ++z) {
    if (!(ch.probabilities().col(z).mean() > 0.0)) {
      ++check.skipped_messages;
      continue;
    }
    check.max_sup_norm =
        std::max(check.max_sup_norm, zeta(ch, z).lpNorm<Eigen::Infinity>());
  }
  check.ratio = check.bound > 0.0 ? check.max_sup_norm / check.bound
                                  : (check.max_sup_norm > 0.0 ? kInf : 0.0);
  check.holds = check.max_sup_norm <= check.bound + 1e-10;
  return check;
}

double tensorized_mi_bound(double info_per_sample_bits, long long n) {
  if (!(info_per_sample_bits >= 0.0)) {
    throw std::invalid_argument("mutual information must be nonnegative");
  }
  if (n < 0) throw std::invalid_argument("sample count must be nonnegative");
  return static_cast<double>(n) * info_per_sample_bits;
}

FanoBound fano_success_bound(double total_info_bits, long long outcomes) {
  if (!(total_info_bits >= 0.0)) {
    throw std::invalid_argument("mutual information must be nonnegative");
  }
  if (outcomes < 2) throw std::invalid_argument("need at least two outcomes");
  const double value = (total_info_bits + 1.0) / std::log2(static_cast<double>(outcomes));
  return {value, value > 1.0};
}

TheoremBound theorem_lower_bound(int dim, double alpha, double epsilon) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  check_alpha(alpha);
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be nonnegative");
  TheoremBound bound;
  bound.below_hypothesis = dim < 32;
  const double spread = std::expm1(epsilon);
  const double denom = 6.0 * alpha * alpha * spread * spread;
  bound.samples = denom == 0.0 ? kInf : dim * std::log2(2.0 * dim) / denom;
  return bound;
}

}  // namespace ldpsep
