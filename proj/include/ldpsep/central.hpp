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

// Central-model baselines over the 2d signed basis vectors.
//
// Candidates are listed as +e_0, ..., +e_{d-1}, -e_0, ..., -e_{d-1} (see
// candidate_slot). The utility of b * e_j on a dataset of n samples is the
// empirical mean of b * x_j, which moves by at most 2/n when one sample is
// swapped, so the exponential mechanism weights candidates by
// exp(epsilon * n * u / 4).

#ifndef LDPSEP_CENTRAL_HPP_
#define LDPSEP_CENTRAL_HPP_

#include <Eigen/Core>

#include "ldpsep/hypercube.hpp"
#include "ldpsep/random.hpp"

namespace ldpsep {

// Per-candidate empirical utility, length 2d. Throws on an empty dataset.
Eigen::VectorXd candidate_utilities(const Dataset& data);

// Selection probabilities for utilities computed on n samples.
Eigen::VectorXd exponential_mechanism_probabilities(
    const Eigen::Ref<const Eigen::VectorXd>& utilities, long long n,
    double epsilon);
Eigen::VectorXd exponential_mechanism_probabilities(const Dataset& data,
                                                    double epsilon);

SignedCoordinate exponential_mechanism(const Dataset& data, double epsilon,
                                       Rng& rng);

// Noise scale of laplace_mean: the l1 swap sensitivity 2d/n over epsilon.
double laplace_scale(int dim, long long n, double epsilon);

// Empirical mean plus iid Laplace(2d / (n epsilon)) on every coordinate.
Eigen::VectorXd laplace_mean(const Dataset& data, double epsilon, Rng& rng);

// Exact probability that the exponential mechanism run on n samples from
// `inst` returns the instance's own (b, j). Enumerates per-coordinate +1
// counts, which are independent binomials under a hard instance. Requires
// 1 <= n and dim * n <= 24.
double em_success_probability_exact(const HardInstance& inst, long long n,
                                    double epsilon);

}  // namespace ldpsep

#endif  // LDPSEP_CENTRAL_HPP_
