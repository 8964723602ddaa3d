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

// Reproducible Monte Carlo experiments over (d, alpha, epsilon, n) grids.
//
// Trial t of grid point (d, alpha, epsilon, n) always uses the generator
// seeded with derive_seed(master, d, alpha, epsilon, n, t), so results do not
// depend on thread count or evaluation order.

#ifndef LDPSEP_HARNESS_HPP_
#define LDPSEP_HARNESS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ldpsep/protocols.hpp"

namespace ldpsep {

enum class Criterion {
  kIdentifyPair,        // (b_hat, j_hat) == (b, j)
  kIdentifyCoordinate,  // j_hat == j with b fixed to +1
  kGap,                 // optimization gap <= alpha / 3
};

std::string_view to_string(Criterion c);
// Accepts "identify-bj", "identify-j" and "gap".
Criterion parse_criterion(std::string_view name);

struct GridPoint {
  int dim = 8;
  double alpha = 0.5;
  double epsilon = 1.0;
  ProtocolKind protocol = ProtocolKind::kLocalRR;
  Criterion criterion = Criterion::kIdentifyPair;
  long long trials = 200;
  std::uint64_t seed = 0;
};

struct SweepRecord {
  int dim = 0;
  double alpha = 0.0;
  double epsilon = 0.0;
  ProtocolKind protocol = ProtocolKind::kLocalRR;
  long long n = 0;
  long long trials = 0;
  long long successes = 0;
  double success_rate = 0.0;
  double wilson_ci_low = 0.0;
  double wilson_ci_high = 0.0;
  std::uint64_t seed = 0;
  // Not part of the CSV row; printed by `simulate`.
  double mean_gap = 0.0;
};

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};

// 95% Wilson score interval.
WilsonInterval wilson_interval(long long successes, long long trials, double z = 1.959963984540054);

// Runs `point.trials` independent end-to-end trials at sample size n. For
// local protocols the randomizer's audited epsilon is checked against the
// declared one first.
SweepRecord evaluate_point(const GridPoint& point, long long n, int threads = 1);

struct ExperimentConfig {
  std::vector<int> dims = {8};
  std::vector<double> alphas = {0.5};
  std::vector<double> epsilons = {1.0};
  ProtocolKind protocol = ProtocolKind::kLocalRR;
  std::vector<long long> n_grid = {100};
  bool auto_n = false;  // search n* per point instead of the n grid
  double target = 2.0 / 3.0;
  long long n_max = 100000;
  long long trials = 200;
  Criterion criterion = Criterion::kIdentifyPair;
  std::uint64_t seed = 1;
  std::string output;  // empty: stdout
  int threads = 1;
  char delimiter = ',';

  // Throws std::invalid_argument describing the first problem found.
  void validate() const;
};

// `key = value` lines, `#` comments, comma-separated lists. Keys: d, alpha,
// epsilon, protocol, n (list or "auto"), target, n_max, trials, criterion,
// seed, out, threads, format (csv|tsv). Values override `base`.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {});
// Applies one `key = value` setting.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

struct NStarResult {
  std::optional<long long> n_star;
  std::vector<SweepRecord> trace;  // in evaluation order
  bool non_monotone = false;
};

// Doubling from n = 1 until the Wilson lower bound reaches `target`, then
// bisection down to the smallest passing n. If the trace contradicts
// monotonicity beyond the confidence intervals, the doubling-stage answer is
// returned with `non_monotone` set.
NStarResult find_n_star(const GridPoint& point, double target, long long n_max,
                        int threads = 1);

// One record per grid point (or per point's n* when cfg.auto_n), sorted by
// (d, alpha, epsilon, protocol, n). Points with no n* up to n_max are
// omitted and counted in `unresolved`.
std::vector<SweepRecord> run_sweep(const ExperimentConfig& cfg, int* unresolved = nullptr);

struct SeparationRow {
  int dim = 0;
  std::optional<long long> n_local;
  std::optional<long long> n_central;
  std::optional<double> ratio;
  double theorem_bound = 0.0;
};

struct SeparationConfig {
  std::vector<int> dims = {4, 8, 16, 32};
  double alpha = 0.5;
  double epsilon = 1.0;
  double target = 2.0 / 3.0;
  long long trials = 200;
  long long n_max = 1000000;
  std::uint64_t seed = 1;
  int threads = 1;
};

// n* of local randomized response against the central exponential
// mechanism, both on exact (b, j) identification.
std::vector<SeparationRow> separation_report(const SeparationConfig& cfg);

std::string csv_field(std::string_view field, char delimiter = ',');
std::string format_number(double v);
void write_records(std::ostream& out, const std::vector<SweepRecord>& records,
                   char delimiter = ',');
void write_separation(std::ostream& out, const std::vector<SeparationRow>& rows,
                      char delimiter = ',');

}  // namespace ldpsep

#endif  // LDPSEP_HARNESS_HPP_
