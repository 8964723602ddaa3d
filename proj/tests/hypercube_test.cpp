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
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace ldpsep {
namespace {

Eigen::VectorXi signs(std::initializer_list<int> values) {
  Eigen::VectorXi x(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (int v : values) x[i++] = v;
  return x;
}

TEST(HardInstanceTest, RejectsInvalidParameters) {
  EXPECT_THROW(HardInstance(0, 0.5, 1, 0), std::invalid_argument);
  EXPECT_THROW(HardInstance(3, -0.1, 1, 0), std::invalid_argument);
  EXPECT_THROW(HardInstance(3, 1.5, 1, 0), std::invalid_argument);
  EXPECT_THROW(HardInstance(3, 0.5, 0, 0), std::invalid_argument);
  EXPECT_THROW(HardInstance(3, 0.5, 1, 3), std::invalid_argument);
  EXPECT_THROW(HardInstance(3, 0.5, 1, -1), std::invalid_argument);
}

TEST(PmfTest, UniformWhenUnbiased) {
  EXPECT_DOUBLE_EQ(pmf(HardInstance(1, 0.0, 1, 0), signs({1})), 0.5);
  EXPECT_DOUBLE_EQ(pmf(HardInstance(1, 0.0, -1, 0), signs({1})), 0.5);
}

TEST(PmfTest, MixtureArithmetic) {
  const HardInstance inst(2, 0.5, 1, 0);
  EXPECT_DOUBLE_EQ(pmf(inst, signs({1, 1})), 0.375);
  EXPECT_DOUBLE_EQ(pmf(inst, signs({-1, 1})), 0.125);
}

TEST(PmfTest, FullyConditioned) {
  EXPECT_DOUBLE_EQ(pmf(HardInstance(3, 1.0, -1, 1), signs({1, -1, 1})), 0.25);
  EXPECT_DOUBLE_EQ(pmf(HardInstance(3, 1.0, -1, 1), signs({1, 1, 1})), 0.0);
}

TEST(PmfTest, RejectsMalformedPoints) {
  const HardInstance inst(3, 0.5, 1, 0);
  EXPECT_THROW(pmf(inst, signs({1, 1})), std::invalid_argument);
  EXPECT_THROW(pmf(inst, signs({1, 0, 1})), std::invalid_argument);
}

TEST(PmfTest, NormalizedAndMatchesProductForm) {
  for (int d = 1; d <= 12; ++d) {
    for (double alpha : {0.0, 0.3, 1.0}) {
      const HardInstance inst(d, alpha, d % 2 ? 1 : -1, d / 2);
      const Eigen::VectorXd p = pmf_vector(inst);
      EXPECT_NEAR(p.sum(), 1.0, 1e-12) << "d=" << d;
      for (Eigen::Index x = 0; x < p.size(); x += 1 + p.size() / 64) {
        EXPECT_NEAR(p[x],
                    oracle::product_pmf(d, alpha, inst.sign(), inst.coordinate(),
                                        static_cast<std::uint64_t>(x)),
                    1e-15);
      }
    }
  }
}

TEST(MixturePmfTest, SpotValues) {
  EXPECT_DOUBLE_EQ(mixture_pmf(2, 0.7, signs({1, -1})), 0.25);
  EXPECT_DOUBLE_EQ(mixture_pmf(1, 1.0, signs({-1})), 0.5);
  EXPECT_DOUBLE_EQ(mixture_pmf(4, 0.9, signs({1, -1, -1, 1})), 0.0625);
  EXPECT_THROW(mixture_pmf(3, 0.5, signs({1, 1})), std::invalid_argument);
}

TEST(MixturePmfTest, MixtureIsUniform) {
  for (int d = 1; d <= 12; ++d) {
    const double uniform = std::ldexp(1.0, -d);
    for (double alpha : {0.0, 0.25, 0.5, 1.0}) {
      const std::uint64_t points = std::uint64_t{1} << d;
      const std::uint64_t stride = d > 8 ? 37 : 1;
      for (std::uint64_t x = 0; x < points; x += stride) {
        ASSERT_NEAR(mixture_pmf(d, alpha, point_signs(x, d)), uniform, 1e-15)
            << "d=" << d << " alpha=" << alpha << " x=" << x;
      }
    }
  }
}

TEST(CoordinateMeansTest, SpotValues) {
  EXPECT_EQ(coordinate_means(HardInstance(3, 0.2, -1, 1)),
            Eigen::Vector3d(0.0, -0.2, 0.0));
  EXPECT_TRUE(coordinate_means(HardInstance(4, 0.0, 1, 2)).isZero(0.0));
  EXPECT_EQ(coordinate_means(HardInstance(1, 1.0, 1, 0)), Eigen::VectorXd::Ones(1));
}

TEST(CoordinateMeansTest, MatchesEnumeratedExpectation) {
  for (int d = 1; d <= 8; ++d) {
    for (int j = 0; j < d; ++j) {
      const HardInstance inst(d, 0.35, j % 2 ? -1 : 1, j);
      const Eigen::VectorXd p = pmf_vector(inst);
      Eigen::VectorXd brute = Eigen::VectorXd::Zero(d);
      for (Eigen::Index x = 0; x < p.size(); ++x) {
        brute += p[x] * point_signs(static_cast<std::uint64_t>(x), d).cast<double>();
      }
      EXPECT_LE((brute - coordinate_means(inst)).lpNorm<Eigen::Infinity>(), 1e-12);
    }
  }
}

TEST(PointEncodingTest, RoundTrips) {
  for (int d : {1, 5, 12}) {
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << d); x += 7) {
      EXPECT_EQ(point_index(point_signs(x, d)), x);
    }
  }
  // Bit k set means x_k = +1.
  EXPECT_EQ(point_index(signs({1, -1, -1})), 1U);
  EXPECT_EQ(point_index(signs({-1, -1, 1})), 4U);
}

TEST(SampleTest, EmptyDataset) {
  Rng rng(1);
  const Dataset data = sample(HardInstance(3, 0.5, 1, 0), 0, rng);
  EXPECT_EQ(data.size(), 0);
  EXPECT_EQ(data.dim(), 3);
  EXPECT_THROW(sample(HardInstance(3, 0.5, 1, 0), -1, rng), std::invalid_argument);
}

TEST(SampleTest, PointMassWhenFullyBiased) {
  Rng rng(2);
  const Dataset data = sample(HardInstance(1, 1.0, 1, 0), 100, rng);
  EXPECT_TRUE((data.samples().array() == 1).all());
}

TEST(SampleTest, BiasedCoordinateFrequency) {
  Rng rng(3);
  const long long n = 100000;
  const Dataset data = sample(HardInstance(2, 0.5, 1, 0), n, rng);
  const double frac = (data.samples().col(0).array() == 1).count() / static_cast<double>(n);
  const double se = std::sqrt(0.75 * 0.25 / n);
  EXPECT_NEAR(frac, 0.75, 3 * se);
}

TEST(SampleTest, DeterministicGivenSeed) {
  Rng a(99);
  Rng b(99);
  const HardInstance inst(70, 0.4, -1, 66);
  EXPECT_EQ(sample(inst, 50, a).samples(), sample(inst, 50, b).samples());
}

TEST(SampleTest, EmpiricalPmfMatchesExact) {
  const long long n = 100000;
  for (int d = 1; d <= 4; ++d) {
    for (double alpha : {0.0, 0.6, 1.0}) {
      const HardInstance inst(d, alpha, -1, d - 1);
      Rng rng(1000 + d);
      const Dataset data = sample(inst, n, rng);
      std::vector<long long> counts(std::size_t{1} << d, 0);
      for (long long i = 0; i < n; ++i) {
        ++counts[point_index(data.row(i).cast<int>().transpose())];
      }
      for (std::uint64_t x = 0; x < counts.size(); ++x) {
        const double p = pmf(inst, x);
        const double se = std::sqrt(std::max(p * (1 - p), 1e-12) / n);
        EXPECT_NEAR(counts[x] / static_cast<double>(n), p, 4 * se + 1e-12)
            << "d=" << d << " alpha=" << alpha << " x=" << x;
      }
    }
  }
}

TEST(DatasetTest, RejectsNonSignEntries) {
  SignMatrix m(2, 2);
  m << 1, -1, 0, 1;
  EXPECT_THROW(Dataset{m}, std::invalid_argument);
}

}  // namespace
}  // namespace ldpsep
