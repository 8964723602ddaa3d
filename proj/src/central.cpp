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

#include "ldpsep/central.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace ldpsep {
namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
}

// Binomial(n, p) pmf over 0..n.
std::vector<double> binomial_pmf(long long n, double p) {
  std::vector<double> out(static_cast<std::size_t>(n + 1));
  for (long long c = 0; c <= n; ++c) {
    const double log_choose = std::lgamma(n + 1.0) - std::lgamma(c + 1.0) -
                              std::lgamma(n - c + 1.0);
    double term = std::exp(log_choose);
    term *= c == 0 ? 1.0 : std::pow(p, static_cast<double>(c));
    term *= c == n ? 1.0 : std::pow(1.0 - p, static_cast<double>(n - c));
    out[static_cast<std::size_t>(c)] = term;
  }
  return out;
}

}  // namespace

Eigen::VectorXd candidate_utilities(const Dataset& data) {
  const Eigen::VectorXd mean = data.empirical_mean();
  Eigen::VectorXd u(2 * data.dim());
  u << mean, -mean;
  return u;
}

Eigen::VectorXd exponential_mechanism_probabilities(
    const Eigen::Ref<const Eigen::VectorXd>& utilities, long long n,
    double epsilon) {
  check_epsilon(epsilon);
  if (n < 1) throw std::invalid_argument("exponential mechanism needs data");
  const Eigen::ArrayXd logits =
      utilities.array() * (epsilon * static_cast<double>(n) / 4.0);
  Eigen::ArrayXd w = (logits - logits.maxCoeff()).exp();
  return (w / w.sum()).matrix();
}

Eigen::VectorXd exponential_mechanism_probabilities(const Dataset& data,
                                                    double epsilon) {
  return exponential_mechanism_probabilities(candidate_utilities(data),
                                             data.size(), epsilon);
}

SignedCoordinate exponential_mechanism(const Dataset& data, double epsilon,
                                       Rng& rng) {
  const Eigen::VectorXd probs = exponential_mechanism_probabilities(data, epsilon);
  const double u = uniform01(rng);
  double cumulative = 0.0;
  int slot = static_cast<int>(probs.size()) - 1;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    cumulative += probs[i];
    if (u < cumulative) {
      slot = static_cast<int>(i);
      break;
    }
  }
  return candidate_at(slot, data.dim());
}

double laplace_scale(int dim, long long n, double epsilon) {
  check_epsilon(epsilon);
  if (n < 1) throw std::invalid_argument("laplace mechanism needs data");
  return 2.0 * dim / (static_cast<double>(n) * epsilon);
}

Eigen::VectorXd laplace_mean(const Dataset& data, double epsilon, Rng& rng) {
  if (data.size() < 1) throw std::invalid_argument("empty dataset");
  const double scale = laplace_scale(data.dim(), data.size(), epsilon);
  Eigen::VectorXd out = data.empirical_mean();
  for (Eigen::Index k = 0; k < out.size(); ++k) out[k] += scale * standard_laplace(rng);
  return out;
}

double em_success_probability_exact(const HardInstance& inst, long long n,
                                    double epsilon) {
  check_epsilon(epsilon);
  const int d = inst.dim();
  if (n < 1) throw std::invalid_argument("exponential mechanism needs data");
  if (static_cast<long long>(d) * n > 24) {
    throw std::invalid_argument("instance too large for exact enumeration");
  }

  std::vector<std::vector<double>> count_pmf;
  for (int k = 0; k < d; ++k) count_pmf.push_back(binomial_pmf(n, inst.prob_plus(k)));

  // Logit of +e_k is epsilon * S_k / 4 with S_k = 2 c_k - n; -e_k negates it.
  const double quarter_eps = epsilon / 4.0;
  std::vector<long long> counts(static_cast<std::size_t>(d), 0);
  Eigen::ArrayXd logits(2 * d);
  const int target = candidate_slot(inst.latent(), d);
  double total = 0.0;
  while (true) {
    double weight = 1.0;
    for (int k = 0; k < d; ++k) {
      const double sum = static_cast<double>(2 * counts[k] - n);
      logits[k] = quarter_eps * sum;
      logits[d + k] = -quarter_eps * sum;
      weight *= count_pmf[k][static_cast<std::size_t>(counts[k])];
    }
    const double top = logits.maxCoeff();
    total += weight * std::exp(logits[target] - top) / (logits - top).exp().sum();

    int k = 0;
    while (k < d && counts[k] == n) counts[k++] = 0;
    if (k == d) break;
    ++counts[k];
  }
  return total;
}

}  // namespace ldpsep
