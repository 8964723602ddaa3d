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

// Non-interactive local protocols M = A(R(X_1), ..., R(X_n)) and the linear
// optimization semantics used to score them.
//
// Ties are always broken toward the smallest coordinate, and a zero
// coordinate value decodes to sign +1.

#ifndef LDPSEP_PROTOCOLS_HPP_
#define LDPSEP_PROTOCOLS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "ldpsep/channel.hpp"
#include "ldpsep/hypercube.hpp"
#include "ldpsep/random.hpp"

namespace ldpsep {

// One message of the coordinate-sampling randomizer.
struct Report {
  int coordinate = 0;
  int bit = 1;

  friend bool operator==(const Report&, const Report&) = default;
};

// Functional form of coordinate_sampling_rr: works at any dimension, and
// agrees message-for-message with the dense channel where that exists.
class CoordinateSamplingRR {
 public:
  CoordinateSamplingRR(int dim, double epsilon);

  int dim() const { return dim_; }
  double epsilon() const { return epsilon_; }

  Report randomize(std::span<const std::int8_t> x, Rng& rng) const;

  // Dense 2^d x 2d matrix; dim <= kMaxChannelDim.
  Channel channel() const;

  // Exact audit at any dimension. Column (j, y) depends on x only through
  // x_j, so the 2 x 2d matrix indexed by the value of x_j carries every
  // likelihood ratio of the full channel.
  PrivacyAudit audit() const;

 private:
  int dim_;
  double epsilon_;
  double keep_;
};

// mu_hat_j = mean over reports on j of y * (e^eps + 1) / (e^eps - 1); zero
// for coordinates no report touched.
Eigen::VectorXd aggregate_debiased_means(std::span<const Report> reports,
                                         int dim, double epsilon);

// j = argmax |mu_hat_k|, b = sign(mu_hat_j).
SignedCoordinate select_coordinate(const Eigen::Ref<const Eigen::VectorXd>& mu_hat);

enum class Geometry { kL1Ball, kSimplex };

std::string_view to_string(Geometry g);

// A point of the l1 ball (||theta||_1 <= 1) or of the simplex.
class ThetaHat {
 public:
  // Throws std::invalid_argument if theta leaves its domain by more than
  // kTolerance.
  ThetaHat(Eigen::VectorXd theta, Geometry geometry);

  static constexpr double kTolerance = 1e-9;

  static ThetaHat vertex(SignedCoordinate c, int dim);

  const Eigen::VectorXd& theta() const { return theta_; }
  Geometry geometry() const { return geometry_; }
  int dim() const { return static_cast<int>(theta_.size()); }

 private:
  Eigen::VectorXd theta_;
  Geometry geometry_;
};

// Maximiser of <mu, theta> over the domain, always a vertex.
ThetaHat theta_star(const Eigen::Ref<const Eigen::VectorXd>& mu, Geometry geometry);

// <mu, theta*(mu)> - <mu, theta_hat> over theta_hat's own geometry.
double optimization_gap(const Eigen::Ref<const Eigen::VectorXd>& mu,
                        const ThetaHat& theta_hat);

SignedCoordinate decode_from_theta(const ThetaHat& theta_hat);

enum class ProtocolKind { kLocalRR, kCentralEM, kCentralLaplaceArgmax };

std::string_view to_string(ProtocolKind kind);
// Accepts "local-rr", "central-em" and "central-laplace-argmax".
ProtocolKind parse_protocol(std::string_view name);

struct ProtocolSpec {
  ProtocolKind kind = ProtocolKind::kLocalRR;
  double epsilon = 1.0;
};

struct IdentificationOutcome {
  SignedCoordinate estimate;
  ThetaHat theta;
  bool exact_match = false;       // (b_hat, j_hat) == (b, j)
  bool coordinate_match = false;  // j_hat == j
  double gap = 0.0;               // optimization_gap against the true means
};

// Draws n samples from `inst`, runs the protocol end to end and scores the
// decoded vertex. With n = 0 every protocol returns the degenerate (+1, 0).
IdentificationOutcome run_identification(const HardInstance& inst, long long n,
                                         const ProtocolSpec& protocol, Rng& rng);

// The reports alone, for checking the local message distribution.
std::vector<Report> collect_reports(const HardInstance& inst, long long n,
                                    const CoordinateSamplingRR& randomizer,
                                    Rng& rng);

}  // namespace ldpsep

#endif  // LDPSEP_PROTOCOLS_HPP_
