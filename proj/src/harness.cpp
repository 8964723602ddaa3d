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

#include "ldpsep/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "ldpsep/info.hpp"

namespace ldpsep {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view value) {
  std::vector<std::string_view> items;
  while (true) {
    const auto comma = value.find(',');
    items.push_back(trim(value.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return items;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw std::invalid_argument("bad value '" + std::string(text) + "' for key '" +
                                std::string(key) + "'");
  }
  return value;
}

template <typename T>
std::vector<T> parse_list(std::string_view key, std::string_view value) {
  std::vector<T> out;
  for (auto item : split_list(value)) out.push_back(parse_number<T>(key, item));
  return out;
}

bool trial_succeeds(const IdentificationOutcome& outcome, Criterion criterion,
                    double alpha) {
  switch (criterion) {
    case Criterion::kIdentifyPair:
      return outcome.exact_match;
    case Criterion::kIdentifyCoordinate:
      return outcome.coordinate_match;
    case Criterion::kGap:
      return outcome.gap <= alpha / 3.0 + 1e-12;
  }
  return false;
}

// Runs fn(begin, end) over [0, count) split into contiguous chunks.
template <typename Fn>
void parallel_chunks(long long count, int threads, Fn fn) {
  const long long workers = std::clamp<long long>(threads, 1, std::max(count, 1LL));
  if (workers == 1) {
    fn(0LL, count);
    return;
  }
  std::vector<std::jthread> pool;
  const long long chunk = (count + workers - 1) / workers;
  for (long long w = 0; w < workers; ++w) {
    const long long begin = w * chunk;
    const long long end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([=] { fn(begin, end); });
  }
}

}  // namespace

std::string_view to_string(Criterion c) {
  switch (c) {
    case Criterion::kIdentifyPair:
      return "identify-bj";
    case Criterion::kIdentifyCoordinate:
      return "identify-j";
    case Criterion::kGap:
      return "gap";
  }
  return "unknown";
}

Criterion parse_criterion(std::string_view name) {
  for (auto c : {Criterion::kIdentifyPair, Criterion::kIdentifyCoordinate, Criterion::kGap}) {
    if (name == to_string(c)) return c;
  }
  throw std::invalid_argument("unknown criterion '" + std::string(name) + "'");
}

WilsonInterval wilson_interval(long long successes, long long trials, double z) {
  if (trials < 1 || successes < 0 || successes > trials) {
    throw std::invalid_argument("invalid binomial counts");
  }
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double center = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  // Clamp so the interval always contains p despite rounding at 0 and 1.
  return {std::min(p, std::max(0.0, center - half)), std::max(p, std::min(1.0, center + half))};
}

SweepRecord evaluate_point(const GridPoint& point, long long n, int threads) {
  if (point.trials < 1) throw std::invalid_argument("trials must be positive");
  if (n < 0) throw std::invalid_argument("sample count must be nonnegative");
  if (point.protocol == ProtocolKind::kLocalRR) {
    const PrivacyAudit audit = CoordinateSamplingRR(point.dim, point.epsilon).audit();
    if (std::abs(audit.epsilon - point.epsilon) > 1e-9) {
      throw std::logic_error("randomizer audit does not match declared epsilon");
    }
  }
  const ProtocolSpec spec{point.protocol, point.epsilon};
  std::vector<char> success(static_cast<std::size_t>(point.trials), 0);
  std::vector<double> gaps(static_cast<std::size_t>(point.trials), 0.0);
  parallel_chunks(point.trials, threads, [&](long long begin, long long end) {
    for (long long t = begin; t < end; ++t) {
      Rng rng(derive_seed(point.seed, point.dim, point.alpha, point.epsilon, n, t));
      const int sign = point.criterion == Criterion::kIdentifyCoordinate
                           ? 1
                           : (bernoulli(rng, 0.5) ? 1 : -1);
      const int coordinate =
          static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(point.dim)));
      const HardInstance inst(point.dim, point.alpha, sign, coordinate);
      const auto outcome = run_identification(inst, n, spec, rng);
      success[static_cast<std::size_t>(t)] = trial_succeeds(outcome, point.criterion, point.alpha);
      gaps[static_cast<std::size_t>(t)] = outcome.gap;
    }
  });

  SweepRecord r;
  r.dim = point.dim;
  r.alpha = point.alpha;
  r.epsilon = point.epsilon;
  r.protocol = point.protocol;
  r.n = n;
  r.trials = point.trials;
  r.successes = std::count(success.begin(), success.end(), 1);
  r.success_rate = static_cast<double>(r.successes) / static_cast<double>(r.trials);
  const WilsonInterval ci = wilson_interval(r.successes, r.trials);
  r.wilson_ci_low = ci.low;
  r.wilson_ci_high = ci.high;
  r.seed = point.seed;
  r.mean_gap = pairwise_sum(gaps) / static_cast<double>(r.trials);
  return r;
}

void ExperimentConfig::validate() const {
  if (dims.empty() || alphas.empty() || epsilons.empty()) {
    throw std::invalid_argument("d, alpha and epsilon grids must be nonempty");
  }
  if (!auto_n && n_grid.empty()) throw std::invalid_argument("n grid must be nonempty");
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("d must be positive");
  }
  for (double a : alphas) {
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
  }
  for (double e : epsilons) {
    if (!(e > 0.0) || !std::isfinite(e)) throw std::invalid_argument("epsilon must be positive");
  }
  for (long long n : n_grid) {
    if (n < 0) throw std::invalid_argument("n must be nonnegative");
  }
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  if (auto_n) {
    if (!(target > 0.0 && target < 1.0)) throw std::invalid_argument("target must lie in (0, 1)");
    if (n_max < 1) throw std::invalid_argument("n_max must be positive");
  }
  if (threads < 1) throw std::invalid_argument("threads must be positive");
  if (delimiter != ',' && delimiter != '\t') throw std::invalid_argument("format must be csv or tsv");
}

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "d") {
    cfg.dims = parse_list<int>(key, value);
  } else if (key == "alpha") {
    cfg.alphas = parse_list<double>(key, value);
  } else if (key == "epsilon") {
    cfg.epsilons = parse_list<double>(key, value);
  } else if (key == "protocol") {
    cfg.protocol = parse_protocol(value);
  } else if (key == "n") {
    cfg.auto_n = value == "auto";
    if (!cfg.auto_n) cfg.n_grid = parse_list<long long>(key, value);
  } else if (key == "target") {
    cfg.target = parse_number<double>(key, value);
  } else if (key == "n_max") {
    cfg.n_max = parse_number<long long>(key, value);
  } else if (key == "trials") {
    cfg.trials = parse_number<long long>(key, value);
  } else if (key == "criterion") {
    cfg.criterion = parse_criterion(value);
  } else if (key == "seed") {
    cfg.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "out") {
    cfg.output = std::string(value);
  } else if (key == "threads") {
    cfg.threads = parse_number<int>(key, value);
  } else if (key == "format") {
    if (value == "csv") {
      cfg.delimiter = ',';
    } else if (value == "tsv") {
      cfg.delimiter = '\t';
    } else {
      throw std::invalid_argument("format must be csv or tsv");
    }
  } else {
    throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
  }
}

ExperimentConfig parse_config(std::istream& in, ExperimentConfig base) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    view = trim(view.substr(0, view.find('#')));
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
    }
    apply_setting(base, view.substr(0, eq), view.substr(eq + 1));
  }
  return base;
}

NStarResult find_n_star(const GridPoint& point, double target, long long n_max,
                        int threads) {
  if (!(target > 0.0 && target < 1.0)) throw std::invalid_argument("target must lie in (0, 1)");
  if (n_max < 1) throw std::invalid_argument("n_max must be positive");
  NStarResult result;
  auto passes = [&](long long n) {
    result.trace.push_back(evaluate_point(point, n, threads));
    return result.trace.back().wilson_ci_low >= target;
  };

  long long lo = 0;  // largest n known to fail
  long long hi = 0;  // smallest n known to pass
  for (long long n = 1;; n *= 2) {
    const long long probe = std::min(n, n_max);
    if (passes(probe)) {
      hi = probe;
      break;
    }
    lo = probe;
    if (probe == n_max) return result;
  }
  const long long doubling_answer = hi;
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    if (passes(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }

  auto by_n = result.trace;
  std::sort(by_n.begin(), by_n.end(),
            [](const SweepRecord& a, const SweepRecord& b) { return a.n < b.n; });
  double best_lower_so_far = 0.0;
  for (const auto& r : by_n) {
    if (r.wilson_ci_high < best_lower_so_far) result.non_monotone = true;
    best_lower_so_far = std::max(best_lower_so_far, r.wilson_ci_low);
  }
  result.n_star = result.non_monotone ? doubling_answer : hi;
  return result;
}

std::vector<SweepRecord> run_sweep(const ExperimentConfig& cfg, int* unresolved) {
  cfg.validate();
  std::vector<SweepRecord> records;
  int missing = 0;
  for (int d : cfg.dims) {
    for (double alpha : cfg.alphas) {
      for (double epsilon : cfg.epsilons) {
        const GridPoint point{d, alpha, epsilon, cfg.protocol, cfg.criterion,
                              cfg.trials, cfg.seed};
        if (cfg.auto_n) {
          const NStarResult search = find_n_star(point, cfg.target, cfg.n_max, cfg.threads);
          if (!search.n_star) {
            ++missing;
            continue;
          }
          for (const auto& r : search.trace) {
            if (r.n == *search.n_star) {
              records.push_back(r);
              break;
            }
          }
        } else {
          for (long long n : cfg.n_grid) records.push_back(evaluate_point(point, n, cfg.threads));
        }
      }
    }
  }
  std::stable_sort(records.begin(), records.end(), [](const SweepRecord& a, const SweepRecord& b) {
    return std::tuple(a.dim, a.alpha, a.epsilon, a.protocol, a.n) <
           std::tuple(b.dim, b.alpha, b.epsilon, b.protocol, b.n);
  });
  if (unresolved != nullptr) *unresolved = missing;
  return records;
}

std::vector<SeparationRow> separation_report(const SeparationConfig& cfg) {
  std::vector<SeparationRow> rows;
  for (int d : cfg.dims) {
    SeparationRow row;
    row.dim = d;
    GridPoint point{d, cfg.alpha, cfg.epsilon, ProtocolKind::kLocalRR,
                    Criterion::kIdentifyPair, cfg.trials, cfg.seed};
    row.n_local = find_n_star(point, cfg.target, cfg.n_max, cfg.threads).n_star;
    point.protocol = ProtocolKind::kCentralEM;
    row.n_central = find_n_star(point, cfg.target, cfg.n_max, cfg.threads).n_star;
    if (row.n_local && row.n_central) {
      row.ratio = static_cast<double>(*row.n_local) / static_cast<double>(*row.n_central);
    }
    row.theorem_bound = theorem_lower_bound(d, cfg.alpha, cfg.epsilon).samples;
    rows.push_back(row);
  }
  return rows;
}

std::string csv_field(std::string_view field, char delimiter) {
  if (field.find_first_of(std::string{delimiter} + "\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void write_records(std::ostream& out, const std::vector<SweepRecord>& records, char delimiter) {
  const char* columns[] = {"d", "alpha", "epsilon", "protocol", "n", "trials", "successes",
                           "success_rate", "wilson_ci_low", "wilson_ci_high", "seed"};
  for (std::size_t i = 0; i < std::size(columns); ++i) {
    out << (i ? std::string(1, delimiter) : "") << columns[i];
  }
  out << '\n';
  for (const auto& r : records) {
    const std::string fields[] = {
        std::to_string(r.dim),       format_number(r.alpha),
        format_number(r.epsilon),    std::string(to_string(r.protocol)),
        std::to_string(r.n),         std::to_string(r.trials),
        std::to_string(r.successes), format_number(r.success_rate),
        format_number(r.wilson_ci_low), format_number(r.wilson_ci_high),
        std::to_string(r.seed)};
    for (std::size_t i = 0; i < std::size(fields); ++i) {
      out << (i ? std::string(1, delimiter) : "") << csv_field(fields[i], delimiter);
    }
    out << '\n';
  }
}

void write_separation(std::ostream& out, const std::vector<SeparationRow>& rows, char delimiter) {
  const std::string sep(1, delimiter);
  out << "d" << sep << "n_local" << sep << "n_central" << sep << "ratio" << sep
      << "theorem_bound\n";
  for (const auto& row : rows) {
    out << row.dim << sep << (row.n_local ? std::to_string(*row.n_local) : "not-found") << sep
        << (row.n_central ? std::to_string(*row.n_central) : "not-found") << sep
        << (row.ratio ? format_number(*row.ratio) : "n/a") << sep
        << format_number(row.theorem_bound) << '\n';
  }
}

}  // namespace ldpsep
