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

// Command-line driver for the experiments and exact checks.
//
// Exit codes: 0 success, 1 I/O failure, 2 invalid input, 3 a threshold
// search found no n* within n_max.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ldpsep/channel.hpp"
#include "ldpsep/harness.hpp"
#include "ldpsep/info.hpp"

namespace {

using namespace ldpsep;

constexpr int kExitIo = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNotFound = 3;

struct GlobalFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<int> threads;
  std::string format;
};

struct PointFlags {
  std::optional<int> dim;
  std::optional<double> alpha;
  std::optional<double> epsilon;
  std::string protocol;
  std::string criterion;
  std::optional<long long> trials;
};

void add_point_flags(CLI::App* cmd, PointFlags& p) {
  cmd->add_option("--d", p.dim, "Dimension");
  cmd->add_option("--alpha", p.alpha, "Bias of the hard instance, in [0, 1]");
  cmd->add_option("--epsilon", p.epsilon, "Privacy parameter in nats");
  cmd->add_option("--protocol", p.protocol, "local-rr | central-em | central-laplace-argmax");
  cmd->add_option("--criterion", p.criterion, "identify-bj | identify-j | gap");
  cmd->add_option("--trials", p.trials, "Independent trials per grid point");
}

// Config file first, then global flags, then per-command flags.
ExperimentConfig load_config(const GlobalFlags& g) {
  ExperimentConfig cfg;
  if (!g.config.empty()) {
    std::ifstream in(g.config);
    if (!in) throw std::runtime_error("cannot open config file " + g.config);
    cfg = parse_config(in);
  }
  if (g.seed) cfg.seed = *g.seed;
  if (!g.out.empty()) cfg.output = g.out;
  if (g.threads) cfg.threads = *g.threads;
  if (!g.format.empty()) apply_setting(cfg, "format", g.format);
  return cfg;
}

GridPoint point_from(const ExperimentConfig& cfg, const PointFlags& p) {
  GridPoint point;
  point.dim = p.dim.value_or(cfg.dims.front());
  point.alpha = p.alpha.value_or(cfg.alphas.front());
  point.epsilon = p.epsilon.value_or(cfg.epsilons.front());
  point.protocol = p.protocol.empty() ? cfg.protocol : parse_protocol(p.protocol);
  point.criterion = p.criterion.empty() ? cfg.criterion : parse_criterion(p.criterion);
  point.trials = p.trials.value_or(cfg.trials);
  point.seed = cfg.seed;
  ExperimentConfig check = cfg;
  check.dims = {point.dim};
  check.alphas = {point.alpha};
  check.epsilons = {point.epsilon};
  check.trials = point.trials;
  check.validate();
  return point;
}

// Writes through `fn` to cfg.output, or stdout when it is empty.
template <typename Fn>
void emit(const std::string& path, Fn fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  fn(out);
  if (!out) throw std::runtime_error("write failed for " + path);
}

void print_report(std::ostream& out, const DivergenceReport& r) {
  out << "dim = " << r.dim << '\n'
      << "alpha = " << format_number(r.alpha) << '\n'
      << "epsilon_nats = " << format_number(r.audit.epsilon) << '\n'
      << "average_chi_square = " << format_number(r.average_chi_square) << '\n'
      << "privacy_bound = " << format_number(r.privacy_bound) << '\n'
      << "privacy_slack = " << format_number(r.privacy_slack) << '\n';
  for (std::size_t slot = 0; slot < r.chi_square.size(); ++slot) {
    const SignedCoordinate c = candidate_at(static_cast<int>(slot), r.dim);
    const std::string tag = std::string(c.sign > 0 ? "+" : "-") + std::to_string(c.index);
    out << "chi_square[" << tag << "] = " << format_number(r.chi_square[slot]) << '\n'
        << "kl_nats[" << tag << "] = " << format_number(r.kl_nats[slot]) << '\n';
  }
  out << "mutual_information_bits = " << format_number(r.mutual_information_bits) << '\n'
      << "n = " << r.n << '\n'
      << "total_information_bits = " << format_number(r.total_information_bits) << '\n'
      << "fano_ceiling = " << format_number(r.fano_ceiling) << '\n'
      << "fano_saturated = " << (r.fano_saturated ? "true" : "false") << '\n'
      << "theorem_bound = " << format_number(r.theorem_bound) << '\n'
      << "theorem_below_hypothesis = " << (r.theorem_below_hypothesis ? "true" : "false")
      << '\n';
}

void print_report_row(std::ostream& out, const DivergenceReport& r, char sep) {
  const std::string s(1, sep);
  out << "d" << s << "alpha" << s << "epsilon" << s << "average_chi_square" << s
      << "privacy_bound" << s << "mutual_information_bits" << s << "n" << s << "fano_ceiling"
      << s << "theorem_bound\n";
  out << r.dim << s << format_number(r.alpha) << s << format_number(r.audit.epsilon) << s
      << format_number(r.average_chi_square) << s << format_number(r.privacy_bound) << s
      << format_number(r.mutual_information_bits) << s << r.n << s
      << format_number(r.fano_ceiling) << s << format_number(r.theorem_bound) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Local vs central private selection on the Boolean hypercube.\n"
      "Grid defaults (d=8, alpha=0.5, epsilon=1, n=100, 200 trials, seed 1) are\n"
      "arbitrary starting points, not recommended settings."};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_option("--config", g.config, "Config file of 'key = value' lines");
  app.add_option("--seed", g.seed, "Master seed (u64)");
  app.add_option("--out", g.out, "Output path (default stdout)");
  app.add_option("--threads", g.threads, "Worker threads");
  app.add_option("--format", g.format, "csv | tsv")->check(CLI::IsMember({"csv", "tsv"}));

  auto* simulate = app.add_subcommand("simulate", "Run one grid point and print its record");
  PointFlags sim_point;
  long long sim_n = -1;
  add_point_flags(simulate, sim_point);
  simulate->add_option("--n", sim_n, "Samples per trial");

  auto* sweep = app.add_subcommand("sweep", "Run every grid point of a config file to CSV");

  auto* nstar = app.add_subcommand("find-n-star", "Search the smallest n reaching a target rate");
  PointFlags ns_point;
  std::optional<double> ns_target;
  std::optional<long long> ns_max;
  add_point_flags(nstar, ns_point);
  nstar->add_option("--target", ns_target, "Target success rate (default 2/3)");
  nstar->add_option("--n-max", ns_max, "Largest n to try");

  auto* separation = app.add_subcommand("separation", "n* of local RR vs central EM across d");
  SeparationConfig sep_cfg;
  separation->add_option("--d", sep_cfg.dims, "Dimensions")->delimiter(',');
  separation->add_option("--alpha", sep_cfg.alpha, "Bias");
  separation->add_option("--epsilon", sep_cfg.epsilon, "Privacy parameter in nats");
  separation->add_option("--target", sep_cfg.target, "Target success rate");
  separation->add_option("--trials", sep_cfg.trials, "Trials per evaluated n");
  separation->add_option("--n-max", sep_cfg.n_max, "Largest n to try");

  auto* verify = app.add_subcommand("verify-bounds", "Exact divergence report for a channel file");
  std::string verify_channel;
  double verify_alpha = 0.5;
  long long verify_n = 1;
  bool verify_csv = false;
  verify->add_option("--channel", verify_channel, "Channel file")->required();
  verify->add_option("--alpha", verify_alpha, "Bias of the hard family")->required();
  verify->add_option("--n", verify_n, "Number of users for the Fano ceiling");
  verify->add_flag("--csv", verify_csv, "Also print a CSV row");

  auto* audit_cmd = app.add_subcommand("privacy-audit", "Exact pure-DP epsilon of a channel file");
  std::string audit_channel;
  audit_cmd->add_option("--channel", audit_channel, "Channel file")->required();

  auto* export_cmd = app.add_subcommand("export-channel", "Write a reference channel file");
  std::string export_kind = "coordinate-rr";
  int export_dim = 2;
  double export_eps = 1.0;
  long long export_m = 4;
  export_cmd->add_option("--kind", export_kind, "rr-bit | coordinate-rr | full-rr | random")
      ->check(CLI::IsMember({"rr-bit", "coordinate-rr", "full-rr", "random"}));
  export_cmd->add_option("--d", export_dim, "Dimension");
  export_cmd->add_option("--epsilon", export_eps, "Privacy parameter in nats");
  export_cmd->add_option("--m", export_m, "Alphabet size (random only)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*simulate) {
      ExperimentConfig cfg = load_config(g);
      const GridPoint point = point_from(cfg, sim_point);
      const long long n = sim_n >= 0 ? sim_n : cfg.n_grid.front();
      const SweepRecord r = evaluate_point(point, n, cfg.threads);
      emit(cfg.output, [&](std::ostream& out) {
        write_records(out, {r}, cfg.delimiter);
        out << "# mean_gap " << format_number(r.mean_gap) << '\n';
      });
      return 0;
    }
    if (*sweep) {
      if (g.config.empty()) throw std::invalid_argument("sweep needs --config");
      const ExperimentConfig cfg = load_config(g);
      int unresolved = 0;
      const auto records = run_sweep(cfg, &unresolved);
      emit(cfg.output, [&](std::ostream& out) { write_records(out, records, cfg.delimiter); });
      if (unresolved > 0) {
        std::cerr << unresolved << " grid point(s) found no n* up to n_max\n";
        return kExitNotFound;
      }
      return 0;
    }
    if (*nstar) {
      ExperimentConfig cfg = load_config(g);
      const GridPoint point = point_from(cfg, ns_point);
      const NStarResult result = find_n_star(point, ns_target.value_or(cfg.target),
                                             ns_max.value_or(cfg.n_max), cfg.threads);
      emit(cfg.output, [&](std::ostream& out) { write_records(out, result.trace, cfg.delimiter); });
      if (result.non_monotone) {
        std::cerr << "warning: success rate not monotone in n beyond confidence intervals\n";
      }
      if (!result.n_star) {
        std::cerr << "n_star = not-found\n";
        return kExitNotFound;
      }
      std::cerr << "n_star = " << *result.n_star << '\n';
      return 0;
    }
    if (*separation) {
      const ExperimentConfig cfg = load_config(g);
      sep_cfg.seed = cfg.seed;
      sep_cfg.threads = cfg.threads;
      const auto rows = separation_report(sep_cfg);
      emit(cfg.output, [&](std::ostream& out) { write_separation(out, rows, cfg.delimiter); });
      for (const auto& row : rows) {
        if (!row.n_local || !row.n_central) return kExitNotFound;
      }
      return 0;
    }
    if (*verify) {
      const ExperimentConfig cfg = load_config(g);
      const Channel ch = load_channel(verify_channel);
      const DivergenceReport report = divergence_report(ch, verify_alpha, verify_n);
      emit(cfg.output, [&](std::ostream& out) {
        print_report(out, report);
        if (verify_csv) print_report_row(out, report, cfg.delimiter);
      });
      return 0;
    }
    if (*audit_cmd) {
      const Channel ch = load_channel(audit_channel);
      const PrivacyAudit audit = audit_epsilon(ch);
      std::cout << "epsilon_nats = " << format_number(audit.epsilon) << '\n'
                << "infinite = " << (audit.infinite() ? "true" : "false") << '\n'
                << "message = " << audit.message << '\n'
                << "input = " << audit.input << '\n'
                << "other_input = " << audit.other_input << '\n';
      return 0;
    }
    if (*export_cmd) {
      const ExperimentConfig cfg = load_config(g);
      std::optional<Channel> ch;
      if (export_kind == "rr-bit") {
        ch = rr_bit(export_eps);
      } else if (export_kind == "coordinate-rr") {
        ch = coordinate_sampling_rr(export_dim, export_eps);
      } else if (export_kind == "full-rr") {
        ch = full_rr(export_dim, export_eps);
      } else {
        Rng rng(cfg.seed);
        ch = random_dp_channel(export_dim, export_eps, export_m, rng);
      }
      emit(cfg.output, [&](std::ostream& out) { write_channel(out, *ch); });
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return 0;
}
