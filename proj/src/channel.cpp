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

#include "ldpsep/channel.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace ldpsep {
namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon must be positive and finite");
  }
}

void check_channel_dim(int dim, int max_dim) {
  if (dim < 1 || dim > max_dim) {
    throw std::invalid_argument("channel dimension " + std::to_string(dim) +
                                " outside [1, " + std::to_string(max_dim) + "]");
  }
}

}  // namespace

Channel::Channel(Eigen::MatrixXd probabilities)
    : input_dim_(0), probabilities_(std::move(probabilities)) {
  const auto rows = static_cast<std::uint64_t>(probabilities_.rows());
  if (rows < 2 || !std::has_single_bit(rows) ||
      rows > (std::uint64_t{1} << kMaxChannelDim)) {
    throw std::invalid_argument("channel must have 2^d rows with 1 <= d <= 12");
  }
  input_dim_ = std::countr_zero(rows);
  if (probabilities_.cols() < 1) {
    throw std::invalid_argument("message alphabet must be nonempty");
  }
  if (!probabilities_.allFinite() || (probabilities_.array() < 0.0).any()) {
    throw std::invalid_argument("channel entries must be finite and nonnegative");
  }
  const Eigen::VectorXd sums = probabilities_.rowwise().sum();
  if (((sums.array() - 1.0).abs() > kRowSumTolerance).any()) {
    throw std::invalid_argument("channel rows must sum to 1");
  }
}

PrivacyAudit audit_epsilon(const Eigen::Ref<const Eigen::MatrixXd>& rows) {
  PrivacyAudit audit;
  bool witnessed = false;
  for (Eigen::Index z = 0; z < rows.cols(); ++z) {
    Eigen::Index hi = 0;
    Eigen::Index lo = 0;
    const double max = rows.col(z).maxCoeff(&hi);
    const double min = rows.col(z).minCoeff(&lo);
    if (max == 0.0) continue;
    const double ratio = min == 0.0 ? std::numeric_limits<double>::infinity()
                                    : std::log(max) - std::log(min);
    if (!witnessed || ratio > audit.epsilon) {
      witnessed = true;
      audit.epsilon = ratio;
      audit.message = z;
      audit.input = static_cast<std::uint64_t>(hi);
      audit.other_input = static_cast<std::uint64_t>(lo);
    }
  }
  return audit;
}

PrivacyAudit audit_epsilon(const Channel& ch) {
  return audit_epsilon(ch.probabilities());
}

double keep_probability(double epsilon) {
  // e^eps / (1 + e^eps) written to stay accurate for large epsilon.
  return 1.0 / (1.0 + std::exp(-epsilon));
}

Channel rr_bit(double epsilon) {
  check_epsilon(epsilon);
  const double keep = keep_probability(epsilon);
  const double flip = 1.0 / (1.0 + std::exp(epsilon));
  Eigen::MatrixXd p(2, 2);
  p << keep, flip,
       flip, keep;
  return Channel(std::move(p));
}

Channel coordinate_sampling_rr(int dim, double epsilon) {
  check_channel_dim(dim, kMaxChannelDim);
  check_epsilon(epsilon);
  const double keep = keep_probability(epsilon) / dim;
  const double flip = 1.0 / (1.0 + std::exp(epsilon)) / dim;
  const Eigen::Index inputs = Eigen::Index{1} << dim;
  Eigen::MatrixXd p(inputs, 2 * dim);
  for (Eigen::Index x = 0; x < inputs; ++x) {
    for (int j = 0; j < dim; ++j) {
      const int bit = ((x >> j) & 1) ? 1 : -1;
      p(x, coordinate_message(j, bit)) = keep;
      p(x, coordinate_message(j, -bit)) = flip;
    }
  }
  return Channel(std::move(p));
}

Channel full_rr(int dim, double epsilon) {
  check_channel_dim(dim, kMaxChannelDim);
  check_epsilon(epsilon);
  const double keep = keep_probability(epsilon / dim);
  const double flip = 1.0 / (1.0 + std::exp(epsilon / dim));
  const Eigen::Index size = Eigen::Index{1} << dim;
  Eigen::MatrixXd p(size, size);
  for (Eigen::Index x = 0; x < size; ++x) {
    for (Eigen::Index z = 0; z < size; ++z) {
      const int flips = std::popcount(static_cast<std::uint64_t>(x ^ z));
      p(x, z) = std::pow(flip, flips) * std::pow(keep, dim - flips);
    }
  }
  return Channel(std::move(p));
}

Eigen::VectorXd push_forward(const Channel& ch,
                             const Eigen::Ref<const Eigen::VectorXd>& input) {
  if (input.size() != ch.num_inputs()) {
    throw std::invalid_argument("input distribution has wrong length");
  }
  if ((input.array() < 0.0).any() || std::abs(input.sum() - 1.0) > 1e-9) {
    throw std::invalid_argument("input distribution is not a pmf");
  }
  return ch.probabilities().transpose() * input;
}

Channel random_dp_channel(int dim, double epsilon, Eigen::Index alphabet_size,
                          Rng& rng) {
  check_channel_dim(dim, 8);
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon must be nonnegative and finite");
  }
  if (alphabet_size < 1) throw std::invalid_argument("alphabet must be nonempty");

  const Eigen::Index inputs = Eigen::Index{1} << dim;
  const Eigen::Index m = alphabet_size;

  // Dirichlet(1) base row, occasionally with one structurally dead message.
  Eigen::VectorXd base(m);
  for (Eigen::Index z = 0; z < m; ++z) base[z] = -std::log1p(-uniform01(rng));
  if (m >= 3 && uniform01(rng) < 0.25) base[static_cast<Eigen::Index>(uniform_index(rng, m))] = 0.0;
  if (base.sum() == 0.0) base.setOnes();
  base /= base.sum();

  // Log tilts in [-eps/2, eps/2]; half of them pinned to the extremes.
  Eigen::MatrixXd tilt(inputs, m);
  for (Eigen::Index x = 0; x < inputs; ++x) {
    for (Eigen::Index z = 0; z < m; ++z) {
      const double u = uniform01(rng) < 0.5 ? (uniform01(rng) < 0.5 ? -1.0 : 1.0)
                                            : 2.0 * uniform01(rng) - 1.0;
      tilt(x, z) = 0.5 * epsilon * u;
    }
  }

  auto build = [&](double scale) {
    Eigen::MatrixXd p = (scale * tilt).array().exp().matrix();
    p.array().rowwise() *= base.transpose().array();
    const Eigen::VectorXd sums = p.rowwise().sum();
    p.array().colwise() /= sums.array();
    return p;
  };

  Eigen::MatrixXd p = build(1.0);
  if (audit_epsilon(p).epsilon > epsilon) {
    // Scale 1/2 is always admissible analytically; bisect for the largest
    // admissible scale.
    double lo = 0.0;
    double hi = 1.0;
    for (int iter = 0; iter < 50; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (audit_epsilon(build(mid)).epsilon <= epsilon) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    p = build(lo);
  }
  return Channel(std::move(p));
}

Channel read_channel(std::istream& in) {
  long long dim = 0;
  long long m = 0;
  if (!(in >> dim >> m)) throw std::invalid_argument("missing channel header");
  check_channel_dim(static_cast<int>(dim), kMaxChannelDim);
  if (m < 1) throw std::invalid_argument("message alphabet must be nonempty");
  const Eigen::Index inputs = Eigen::Index{1} << dim;
  Eigen::MatrixXd p(inputs, m);
  for (Eigen::Index x = 0; x < inputs; ++x) {
    for (Eigen::Index z = 0; z < m; ++z) {
      if (!(in >> p(x, z))) {
        throw std::invalid_argument("channel file truncated at row " +
                                    std::to_string(x));
      }
    }
  }
  std::string extra;
  if (in >> extra) throw std::invalid_argument("trailing data in channel file");
  return Channel(std::move(p));
}

void write_channel(std::ostream& out, const Channel& ch) {
  out << ch.input_dim() << ' ' << ch.alphabet_size() << '\n';
  char buf[32];
  for (Eigen::Index x = 0; x < ch.num_inputs(); ++x) {
    for (Eigen::Index z = 0; z < ch.alphabet_size(); ++z) {
      std::snprintf(buf, sizeof buf, "%.17g", ch.probabilities()(x, z));
      out << (z ? " " : "") << buf;
    }
    out << '\n';
  }
}

Channel load_channel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open channel file " + path);
  return read_channel(in);
}

void save_channel(const std::string& path, const Channel& ch) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write channel file " + path);
  write_channel(out, ch);
}

}  // namespace ldpsep
