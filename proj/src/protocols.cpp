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

#include "ldpsep/protocols.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ldpsep/central.hpp"

namespace ldpsep {
namespace {

// First index of the largest |v_k|.
Eigen::Index argmax_abs(const Eigen::Ref<const Eigen::VectorXd>& v) {
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < v.size(); ++k) {
    if (std::abs(v[k]) > std::abs(v[best])) best = k;
  }
  return best;
}

Eigen::Index argmax(const Eigen::Ref<const Eigen::VectorXd>& v) {
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < v.size(); ++k) {
    if (v[k] > v[best]) best = k;
  }
  return best;
}

}  // namespace

CoordinateSamplingRR::CoordinateSamplingRR(int dim, double epsilon)
    : dim_(dim), epsilon_(epsilon), keep_(keep_probability(epsilon)) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon must be positive and finite");
  }
}

Report CoordinateSamplingRR::randomize(std::span<const std::int8_t> x,
                                       Rng& rng) const {
  if (static_cast<int>(x.size()) != dim_) {
    throw std::invalid_argument("sample has wrong dimension");
  }
  const int j = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(dim_)));
  const int truth = x[static_cast<std::size_t>(j)];
  return {j, bernoulli(rng, keep_) ? truth : -truth};
}

Channel CoordinateSamplingRR::channel() const {
  return coordinate_sampling_rr(dim_, epsilon_);
}

PrivacyAudit CoordinateSamplingRR::audit() const {
  if (dim_ <= kMaxChannelDim) return audit_epsilon(channel());
  const double keep = keep_ / dim_;
  const double flip = 1.0 / (1.0 + std::exp(epsilon_)) / dim_;
  Eigen::MatrixXd compressed(2, 2 * dim_);
  for (int j = 0; j < dim_; ++j) {
    for (int value : {-1, 1}) {
      const Eigen::Index row = value > 0 ? 1 : 0;
      compressed(row, coordinate_message(j, value)) = keep;
      compressed(row, coordinate_message(j, -value)) = flip;
    }
  }
  return audit_epsilon(compressed);
}

Eigen::VectorXd aggregate_debiased_means(std::span<const Report> reports,
                                         int dim, double epsilon) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("debiasing needs positive epsilon");
  }
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  Eigen::VectorXd sums = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd hits = Eigen::VectorXd::Zero(dim);
  for (const Report& r : reports) {
    if (r.coordinate < 0 || r.coordinate >= dim) {
      throw std::invalid_argument("report coordinate out of range");
    }
    sums[r.coordinate] += r.bit;
    hits[r.coordinate] += 1.0;
  }
  // (e^eps + 1) / (e^eps - 1) = 1 / tanh(eps / 2)
  const double debias = 1.0 / std::tanh(0.5 * epsilon);
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(dim);
  for (int j = 0; j < dim; ++j) {
    if (hits[j] > 0) mu[j] = debias * sums[j] / hits[j];
  }
  return mu;
}

SignedCoordinate select_coordinate(const Eigen::Ref<const Eigen::VectorXd>& mu_hat) {
  if (mu_hat.size() == 0) throw std::invalid_argument("empty estimate");
  const Eigen::Index j = argmax_abs(mu_hat);
  return {mu_hat[j] < 0 ? -1 : 1, static_cast<int>(j)};
}

std::string_view to_string(Geometry g) {
  return g == Geometry::kL1Ball ? "l1-ball" : "simplex";
}

ThetaHat::ThetaHat(Eigen::VectorXd theta, Geometry geometry)
    : theta_(std::move(theta)), geometry_(geometry) {
  if (theta_.size() == 0 || !theta_.allFinite()) {
    throw std::invalid_argument("theta must be a finite nonempty vector");
  }
  if (geometry_ == Geometry::kL1Ball) {
    if (theta_.lpNorm<1>() > 1.0 + kTolerance) {
      throw std::invalid_argument("theta leaves the l1 ball");
    }
  } else if (theta_.minCoeff() < -kTolerance ||
             std::abs(theta_.sum() - 1.0) > kTolerance) {
    throw std::invalid_argument("theta leaves the simplex");
  }
}

ThetaHat ThetaHat::vertex(SignedCoordinate c, int dim) {
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(dim);
  theta[c.index] = c.sign;
  return ThetaHat(std::move(theta), Geometry::kL1Ball);
}

ThetaHat theta_star(const Eigen::Ref<const Eigen::VectorXd>& mu, Geometry geometry) {
  if (mu.size() == 0) throw std::invalid_argument("empty objective");
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(mu.size());
  if (geometry == Geometry::kL1Ball) {
    const Eigen::Index j = argmax_abs(mu);
    theta[j] = mu[j] < 0 ? -1.0 : 1.0;
  } else {
    theta[argmax(mu)] = 1.0;
  }
  return ThetaHat(std::move(theta), geometry);
}

double optimization_gap(const Eigen::Ref<const Eigen::VectorXd>& mu,
                        const ThetaHat& theta_hat) {
  if (mu.size() != theta_hat.dim()) {
    throw std::invalid_argument("objective and theta dimensions differ");
  }
  const ThetaHat best = theta_star(mu, theta_hat.geometry());
  return std::max(0.0, mu.dot(best.theta()) - mu.dot(theta_hat.theta()));
}

SignedCoordinate decode_from_theta(const ThetaHat& theta_hat) {
  const SignedCoordinate c = select_coordinate(theta_hat.theta());
  if (theta_hat.geometry() == Geometry::kSimplex) return {1, c.index};
  return c;
}

std::string_view to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::kLocalRR:
      return "local-rr";
    case ProtocolKind::kCentralEM:
      return "central-em";
    case ProtocolKind::kCentralLaplaceArgmax:
      return "central-laplace-argmax";
  }
  return "unknown";
}

ProtocolKind parse_protocol(std::string_view name) {
  for (auto kind : {ProtocolKind::kLocalRR, ProtocolKind::kCentralEM,
                    ProtocolKind::kCentralLaplaceArgmax}) {
    if (name == to_string(kind)) return kind;
  }
  throw std::invalid_argument("unknown protocol '" + std::string(name) + "'");
}

std::vector<Report> collect_reports(const HardInstance& inst, long long n,
                                    const CoordinateSamplingRR& randomizer,
                                    Rng& rng) {
  if (randomizer.dim() != inst.dim()) {
    throw std::invalid_argument("randomizer dimension does not match instance");
  }
  std::vector<Report> reports;
  reports.reserve(static_cast<std::size_t>(std::max(n, 0LL)));
  std::vector<std::int8_t> x(static_cast<std::size_t>(inst.dim()));
  for (long long i = 0; i < n; ++i) {
    sample_point(inst, rng, x);
    reports.push_back(randomizer.randomize(x, rng));
  }
  return reports;
}

IdentificationOutcome run_identification(const HardInstance& inst, long long n,
                                         const ProtocolSpec& protocol, Rng& rng) {
  if (n < 0) throw std::invalid_argument("sample count must be nonnegative");
  const int d = inst.dim();
  SignedCoordinate estimate{1, 0};
  if (n > 0) {
    switch (protocol.kind) {
      case ProtocolKind::kLocalRR: {
        const CoordinateSamplingRR randomizer(d, protocol.epsilon);
        const auto reports = collect_reports(inst, n, randomizer, rng);
        estimate = select_coordinate(
            aggregate_debiased_means(reports, d, protocol.epsilon));
        break;
      }
      case ProtocolKind::kCentralEM:
        estimate = exponential_mechanism(sample(inst, n, rng), protocol.epsilon, rng);
        break;
      case ProtocolKind::kCentralLaplaceArgmax:
        estimate = select_coordinate(
            laplace_mean(sample(inst, n, rng), protocol.epsilon, rng));
        break;
    }
  }
  ThetaHat theta = ThetaHat::vertex(estimate, d);
  const double gap = optimization_gap(coordinate_means(inst), theta);
  return {estimate, std::move(theta), estimate == inst.latent(),
          estimate.index == inst.coordinate(), gap};
}

}  // namespace ldpsep
