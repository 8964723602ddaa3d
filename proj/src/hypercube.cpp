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

#include "ldpsep/hypercube.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ldpsep {
namespace {

void check_enumerable(int dim) {
  if (dim < 1 || dim > kMaxEnumerationDim) {
    throw std::invalid_argument("dimension " + std::to_string(dim) +
                                " outside enumerable range [1, " +
                                std::to_string(kMaxEnumerationDim) + "]");
  }
}

bool bit_is_plus(std::uint64_t index, int k) { return (index >> k) & 1U; }

}  // namespace

HardInstance::HardInstance(int dim, double alpha, int sign, int coordinate)
    : dim_(dim), alpha_(alpha), sign_(sign), coordinate_(coordinate) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in [0, 1]");
  }
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +-1");
  if (coordinate < 0 || coordinate >= dim) {
    throw std::invalid_argument("coordinate out of range");
  }
}

double HardInstance::prob_plus(int k) const {
  if (k != coordinate_) return 0.5;
  return 0.5 * (1.0 + alpha_ * sign_);
}

Dataset::Dataset(SignMatrix samples) : samples_(std::move(samples)) {
  if (samples_.cols() < 1) throw std::invalid_argument("dimension must be positive");
  for (Eigen::Index i = 0; i < samples_.size(); ++i) {
    const auto v = samples_.data()[i];
    if (v != 1 && v != -1) {
      throw std::invalid_argument("dataset entries must be +-1");
    }
  }
}

Eigen::VectorXd Dataset::column_sums() const {
  return samples_.cast<double>().colwise().sum().transpose();
}

Eigen::VectorXd Dataset::empirical_mean() const {
  if (size() == 0) throw std::invalid_argument("empty dataset");
  return column_sums() / static_cast<double>(size());
}

std::uint64_t point_index(const Eigen::Ref<const Eigen::VectorXi>& x) {
  if (x.size() < 1 || x.size() > 63) {
    throw std::invalid_argument("point dimension out of range");
  }
  std::uint64_t index = 0;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    if (x[k] == 1) {
      index |= std::uint64_t{1} << k;
    } else if (x[k] != -1) {
      throw std::invalid_argument("point entries must be +-1");
    }
  }
  return index;
}

Eigen::VectorXi point_signs(std::uint64_t index, int dim) {
  Eigen::VectorXi x(dim);
  for (int k = 0; k < dim; ++k) x[k] = bit_is_plus(index, k) ? 1 : -1;
  return x;
}

double pmf(const HardInstance& inst, std::uint64_t index) {
  const int d = inst.dim();
  const bool hit = (bit_is_plus(index, inst.coordinate()) ? 1 : -1) == inst.sign();
  const double uniform = std::ldexp(1.0, -d);
  return inst.alpha() * (hit ? 2.0 * uniform : 0.0) +
         (1.0 - inst.alpha()) * uniform;
}

double pmf(const HardInstance& inst,
           const Eigen::Ref<const Eigen::VectorXi>& x) {
  if (x.size() != inst.dim()) {
    throw std::invalid_argument("point dimension does not match instance");
  }
  return pmf(inst, point_index(x));
}

Eigen::VectorXd pmf_vector(const HardInstance& inst) {
  check_enumerable(inst.dim());
  const std::uint64_t size = std::uint64_t{1} << inst.dim();
  Eigen::VectorXd p(static_cast<Eigen::Index>(size));
  for (std::uint64_t x = 0; x < size; ++x) p[static_cast<Eigen::Index>(x)] = pmf(inst, x);
  return p;
}

Eigen::VectorXd uniform_pmf_vector(int dim) {
  check_enumerable(dim);
  const Eigen::Index size = Eigen::Index{1} << dim;
  return Eigen::VectorXd::Constant(size, std::ldexp(1.0, -dim));
}

double mixture_pmf(int dim, double alpha,
                   const Eigen::Ref<const Eigen::VectorXi>& x) {
  if (x.size() != dim) {
    throw std::invalid_argument("point dimension does not match");
  }
  const std::uint64_t index = point_index(x);
  double total = 0.0;
  for (int sign : {1, -1}) {
    for (int j = 0; j < dim; ++j) total += pmf(HardInstance(dim, alpha, sign, j), index);
  }
  return total / (2.0 * dim);
}

Eigen::VectorXd coordinate_means(const HardInstance& inst) {
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(inst.dim());
  mu[inst.coordinate()] = inst.alpha() * inst.sign();
  return mu;
}

void sample_point(const HardInstance& inst, Rng& rng, std::span<std::int8_t> out) {
  if (static_cast<int>(out.size()) != inst.dim()) {
    throw std::invalid_argument("output span has wrong length");
  }
  const bool conditioned = bernoulli(rng, inst.alpha());
  std::uint64_t bits = 0;
  for (int k = 0; k < inst.dim(); ++k) {
    if (k % 64 == 0) bits = rng();
    out[k] = (bits & 1U) ? 1 : -1;
    bits >>= 1;
  }
  if (conditioned) out[inst.coordinate()] = static_cast<std::int8_t>(inst.sign());
}

Dataset sample(const HardInstance& inst, long long n, Rng& rng) {
  if (n < 0) throw std::invalid_argument("sample count must be nonnegative");
  SignMatrix samples(n, inst.dim());
  for (long long i = 0; i < n; ++i) {
    sample_point(inst, rng, std::span<std::int8_t>(samples.row(i).data(),
                                                   static_cast<std::size_t>(inst.dim())));
  }
  return Dataset(std::move(samples));
}

}  // namespace ldpsep
