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
#include <limits>
#include <stdexcept>

#include <gtest/gtest.h>

#include "ldpsep/hypercube.hpp"
#include "oracles.hpp"

namespace ldpsep {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(DivergenceTest, ChiSquareSpotValues) {
  EXPECT_NEAR(chi_square(Eigen::Vector2d(0.75, 0.25), Eigen::Vector2d(0.5, 0.5)), 0.25, 1e-15);
  EXPECT_EQ(chi_square(Eigen::Vector2d(0.5, 0.5), Eigen::Vector2d(1.0, 0.0)), kInf);
  EXPECT_EQ(chi_square(Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(1.0, 0.0)), 0.0);
}

TEST(DivergenceTest, KlSpotValues) {
  const KlDivergence d = kl(Eigen::Vector2d(0.75, 0.25), Eigen::Vector2d(0.5, 0.5));
  const double expected = 0.75 * std::log(1.5) + 0.25 * std::log(0.5);
  EXPECT_NEAR(d.nats, expected, 1e-15);
  EXPECT_NEAR(d.bits, expected / std::log(2.0), 1e-15);
  EXPECT_EQ(kl(Eigen::Vector2d(0.5, 0.5), Eigen::Vector2d(1.0, 0.0)).nats, kInf);
}

TEST(DivergenceTest, KlBelowChiSquare) {
  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd p(6);
    Eigen::VectorXd q(6);
    for (int i = 0; i < 6; ++i) {
      p[i] = uniform01(rng);
      q[i] = uniform01(rng) + 1e-3;
    }
    p /= p.sum();
    q /= q.sum();
    EXPECT_LE(kl(p, q).nats, chi_square(p, q) + 1e-15);
  }
}

TEST(DivergenceTest, RejectsNonPmf) {
  EXPECT_THROW(chi_square(Eigen::Vector2d(0.7, 0.7), Eigen::Vector2d(0.5, 0.5)),
               std::invalid_argument);
  EXPECT_THROW(kl(Eigen::Vector2d(0.5, 0.5), Eigen::Vector3d(0.2, 0.3, 0.5)),
               std::invalid_argument);
}

TEST(AverageChiSquareTest, ConstantChannelIsZero) {
  const DivergenceReport r = average_chi_square(Channel(Eigen::MatrixXd::Constant(8, 4, 0.25)), 0.9);
  EXPECT_NEAR(r.average_chi_square, 0.0, 1e-15);
  EXPECT_EQ(r.privacy_bound, 0.0);
}

TEST(AverageChiSquareTest, SingleBitSpotValue) {
  const DivergenceReport r = average_chi_square(rr_bit(std::log(3.0)), 1.0);
  EXPECT_NEAR(r.average_chi_square, 0.25, 1e-15);
  EXPECT_NEAR(r.privacy_bound, 4.0, 1e-12);
  ASSERT_EQ(r.chi_square.size(), 2U);
}

TEST(AverageChiSquareTest, InfiniteEpsilonHasInfiniteBound) {
  Eigen::MatrixXd p(2, 2);
  p << 1.0, 0.0, 0.5, 0.5;
  const DivergenceReport r = average_chi_square(Channel(p), 0.5);
  EXPECT_EQ(r.privacy_bound, kInf);
  EXPECT_TRUE(std::isfinite(r.average_chi_square));
}

TEST(AverageChiSquareTest, MatchesBruteForce) {
  EXPECT_NEAR(average_chi_square(coordinate_sampling_rr(2, 1.0), 0.5).average_chi_square,
              oracle::average_chi_square(coordinate_sampling_rr(2, 1.0).probabilities(), 2, 0.5),
              1e-12);
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 1 + trial % 6;
    const Channel ch = random_dp_channel(d, 0.5 + 0.05 * trial, 2 + trial % 5, rng);
    for (double alpha : {0.1, 0.5, 1.0}) {
      const DivergenceReport r = average_chi_square(ch, alpha);
      EXPECT_NEAR(r.average_chi_square, oracle::average_chi_square(ch.probabilities(), d, alpha),
                  1e-12);
      EXPECT_LE(r.average_chi_square, r.privacy_bound * (1 + 1e-9) + 1e-15);
    }
  }
}

TEST(MutualInformationTest, SpotValues) {
  EXPECT_NEAR(mutual_information_per_sample(coordinate_sampling_rr(3, 1.0), 0.0).joint_bits,
              0.0, 1e-15);
  EXPECT_NEAR(mutual_information_per_sample(Channel(Eigen::MatrixXd::Constant(4, 2, 0.5)), 1.0)
                  .conditional_bits,
              0.0, 1e-15);
  const double h = -(0.75 * std::log2(0.75) + 0.25 * std::log2(0.25));
  const MutualInformation mi = mutual_information_per_sample(rr_bit(std::log(3.0)), 1.0);
  EXPECT_NEAR(mi.joint_bits, 1.0 - h, 1e-12);
  EXPECT_NEAR(mi.conditional_bits, 1.0 - h, 1e-12);
}

TEST(MutualInformationTest, RoutesAgree) {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Channel ch = random_dp_channel(1 + trial % 5, 1.0, 3, rng);
    const MutualInformation mi = mutual_information_per_sample(ch, 0.6);
    EXPECT_NEAR(mi.joint_bits, mi.conditional_bits, 1e-10);
    EXPECT_GE(mi.joint_bits, -1e-15);
  }
}

TEST(WhtTest, ConstantAndDictator) {
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(8);
  EXPECT_EQ(wht(ones), Eigen::VectorXd::Unit(8, 0));
  Eigen::VectorXd dictator(8);
  for (Eigen::Index x = 0; x < 8; ++x) dictator[x] = (x & 1) ? 1.0 : -1.0;
  EXPECT_EQ(wht(dictator), Eigen::VectorXd::Unit(8, 1));
}

TEST(WhtTest, MatchesDirectSumAndParseval) {
  Rng rng(6);
  for (int d = 1; d <= 6; ++d) {
    Eigen::VectorXd f(1 << d);
    for (Eigen::Index x = 0; x < f.size(); ++x) f[x] = 2 * uniform01(rng) - 1;
    const Eigen::VectorXd c = wht(f);
    EXPECT_LE((c - oracle::fourier_direct(f, d)).lpNorm<Eigen::Infinity>(), 1e-14);
    EXPECT_NEAR(c.squaredNorm(), f.squaredNorm() / f.size(), 1e-12);
    EXPECT_LE((inverse_wht(c) - f).lpNorm<Eigen::Infinity>(), 1e-12);
  }
}

TEST(WhtTest, WorksOnExpressionsAndOtherScalars) {
  const Eigen::VectorXf f = Eigen::VectorXf::LinSpaced(4, 0.0f, 3.0f);
  const Eigen::VectorXf c = wht(2.0f * f);
  EXPECT_FLOAT_EQ(c[0], 3.0f);
  EXPECT_FLOAT_EQ(inverse_wht(c)[3], 6.0f);
}

TEST(WhtTest, RejectsBadLength) {
  EXPECT_THROW(wht(Eigen::VectorXd::Ones(6)), std::invalid_argument);
  EXPECT_THROW(inverse_wht(Eigen::VectorXd(0)), std::invalid_argument);
}

TEST(ShiftIdentityTest, UnbiasedAndConstantAreZero) {
  const ShiftIdentityCheck unbiased = check_average_shift(coordinate_sampling_rr(3, 1.0), 0.0);
  EXPECT_LE(unbiased.max_identity_residual, 1e-15);
  EXPECT_LE(unbiased.max_slack, 1e-15);
  const ShiftIdentityCheck constant =
      check_average_shift(Channel(Eigen::MatrixXd::Constant(4, 3, 1.0 / 3)), 1.0);
  EXPECT_LE(constant.max_identity_residual, 1e-15);
  EXPECT_GE(constant.min_slack, 0.0);
}

TEST(ShiftIdentityTest, LhsMatchesBruteForce) {
  Rng rng(7);
  const Channel ch = random_dp_channel(3, 1.0, 5, rng);
  const double alpha = 0.5;
  const ShiftIdentityCheck check = check_average_shift(ch, alpha);
  EXPECT_LE(check.max_identity_residual, 1e-10);
  EXPECT_GE(check.min_slack, -1e-12);
  EXPECT_LE(check.max_parseval_residual, 1e-12);
  EXPECT_LE(check.max_inverse_residual, 1e-12);
  EXPECT_LE(check.max_zero_mean_residual, 1e-12);
  for (Eigen::Index z = 0; z < ch.alphabet_size(); ++z) {
    if (ch.probabilities().col(z).isZero(0.0)) continue;
    const Eigen::VectorXd zz = zeta(ch, z);
    const Eigen::VectorXd c = oracle::fourier_direct(zz, 3);
    const double degree_one = c[1] * c[1] + c[2] * c[2] + c[4] * c[4];
    EXPECT_NEAR(oracle::average_shift_squared(zz, 3, alpha), alpha * alpha / 3 * degree_one,
                1e-12);
  }
}

TEST(SupNormTest, SpotValues) {
  EXPECT_EQ(check_zeta_sup_norm(Channel(Eigen::MatrixXd::Constant(2, 2, 0.5))).max_sup_norm,
            0.0);
  const SupNormCheck rr = check_zeta_sup_norm(rr_bit(std::log(3.0)));
  EXPECT_NEAR(rr.max_sup_norm, 0.5, 1e-15);
  EXPECT_NEAR(rr.bound, 2.0, 1e-12);
  EXPECT_TRUE(rr.holds);
}

TEST(SupNormTest, RandomChannelsSatisfyBound) {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const Channel ch = random_dp_channel(1 + trial % 6, 0.1 + 0.03 * trial, 2 + trial % 7, rng);
    EXPECT_TRUE(check_zeta_sup_norm(ch).holds) << "trial " << trial;
  }
}

TEST(ZetaTest, CentredUnderUniform) {
  const Channel ch = full_rr(3, 0.8);
  for (Eigen::Index z = 0; z < ch.alphabet_size(); ++z) {
    EXPECT_NEAR(zeta(ch, z).mean(), 0.0, 1e-15);
  }
}

TEST(FanoTest, SpotValues) {
  EXPECT_NEAR(fano_success_bound(0.0, 8).value, 1.0 / 3, 1e-15);
  EXPECT_NEAR(fano_success_bound(tensorized_mi_bound(0.01, 100), 64).value, 1.0 / 3, 1e-15);
  const FanoBound saturated = fano_success_bound(10.0, 4);
  EXPECT_NEAR(saturated.value, 5.5, 1e-15);
  EXPECT_TRUE(saturated.saturated);
  EXPECT_THROW(fano_success_bound(1.0, 1), std::invalid_argument);
}

TEST(TheoremBoundTest, SpotValues) {
  const TheoremBound b = theorem_lower_bound(32, 0.1, 1.0);
  EXPECT_NEAR(b.samples, 1083.9, 0.1);
  EXPECT_FALSE(b.below_hypothesis);
  EXPECT_NEAR(theorem_lower_bound(32, 1.0, std::log(2.0)).samples, 32.0, 1e-12);
  EXPECT_EQ(theorem_lower_bound(32, 0.0, 1.0).samples, kInf);
  EXPECT_TRUE(theorem_lower_bound(16, 0.5, 1.0).below_hypothesis);
}

TEST(TheoremBoundTest, InverseSquareInAlpha) {
  for (double alpha : {0.05, 0.2, 0.4}) {
    EXPECT_NEAR(theorem_lower_bound(64, 2 * alpha, 0.7).samples,
                theorem_lower_bound(64, alpha, 0.7).samples / 4, 1e-9);
  }
}

TEST(DivergenceReportTest, FillsDerivedFields) {
  const DivergenceReport r = divergence_report(coordinate_sampling_rr(4, 1.0), 0.5, 100);
  EXPECT_EQ(r.n, 100);
  EXPECT_NEAR(r.total_information_bits, 100 * r.mutual_information_bits, 1e-12);
  EXPECT_NEAR(r.fano_ceiling, (r.total_information_bits + 1) / 3.0, 1e-12);
  EXPECT_NEAR(r.theorem_bound, theorem_lower_bound(4, 0.5, 1.0).samples, 1e-9);
  EXPECT_TRUE(r.theorem_below_hypothesis);
}

}  // namespace
}  // namespace ldpsep
