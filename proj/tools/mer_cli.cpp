// SPDX-License-Identifier: Apache-2.0
//
// mer: command-line front end for the relay precoding toolkit.
// Subcommands: region, curve, check, optimize. All sweeps write CSV with a
// header row, full-precision scientific notation and deterministic row
// order; `check --json` emits a machine-readable report.
#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "mer/criteria.hpp"
#include "mer/montecarlo.hpp"
#include "mer/optimize.hpp"
#include "mer/system.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotOptimal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitNoConvergence = 4;

struct DbRange {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  std::vector<double> values() const {
    if (!std::isfinite(start) || !std::isfinite(stop)) return {start};
    std::vector<double> v;
    for (double x = start; x <= stop + 1e-9; x += step) v.push_back(x);
    return v;
  }
};

// "a" | "a:b" | "a:b:step"
DbRange parse_range(const std::string& text) {
  DbRange r;
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(std::stod(tok));
  if (parts.empty() || parts.size() > 3)
    throw CLI::ValidationError("range", "expected start[:stop[:step]]");
  r.start = parts[0];
  r.stop = parts.size() > 1 ? parts[1] : parts[0];
  r.step = parts.size() > 2 ? parts[2] : 1.0;
  if (r.step <= 0.0) throw CLI::ValidationError("range", "step must be > 0");
  if (r.stop < r.start) throw CLI::ValidationError("range", "stop < start");
  return r;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

double boundary_value(const mer::BoundaryResult& b) {
  switch (b.status) {
    case mer::BoundaryResult::Status::crossed:
      return b.pr_db;
    case mer::BoundaryResult::Status::optimal_everywhere:
      return std::numeric_limits<double>::infinity();
    case mer::BoundaryResult::Status::optimal_nowhere:
      return -std::numeric_limits<double>::infinity();
  }
  return std::nan("");
}

struct CommonOptions {
  std::string ps_db = "10";
  std::string pr_db = "10";
  std::vector<double> rho{0.5};
  std::vector<int> ns{2};
  int nr = 2;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  std::string out;
  std::string config;
  bool bits = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--ps-db", o.ps_db, "source power in dB (start[:stop[:step]])");
  cmd->add_option("--pr-db", o.pr_db, "relay power in dB (start[:stop[:step]])");
  cmd->add_option("--rho", o.rho, "inter-antenna correlation(s) in [0,1)")
      ->delimiter(',');
  cmd->add_option("--ns", o.ns, "source antenna count(s)")->delimiter(',');
  cmd->add_option("--nr", o.nr, "relay antenna count");
  cmd->add_option("--samples", o.samples, "Monte Carlo sample count");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--out", o.out, "output CSV path (default stdout)");
  cmd->add_flag("--bits", o.bits, "report capacities in bits instead of nats");
  cmd->add_option("--config", o.config,
                  "plain key=value config file; command-line flags take "
                  "precedence over file entries");
}

std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Resolves a key=value file into extra command-line tokens for options the
// user did not pass explicitly, which makes explicit flags win.
std::vector<std::string> config_tokens(const std::string& path,
                                       const std::vector<std::string>& given) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read config file '" + path + "'");
  std::vector<std::string> tokens;
  std::string line;
  int line_no = 0;
  while (std::getline(f, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trimmed(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected key=value");
    const std::string key = trimmed(line.substr(0, eq));
    const std::string value = trimmed(line.substr(eq + 1));
    if (key.empty() || key == "config") continue;
    const std::string flag = "--" + key;
    bool overridden = false;
    for (const auto& g : given)
      overridden = overridden || g == flag || g.rfind(flag + "=", 0) == 0;
    if (overridden) continue;
    if (value == "true") {
      tokens.push_back(flag);
    } else if (value != "false") {
      tokens.push_back(flag);
      tokens.push_back(value);
    }
  }
  return tokens;
}

int write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return kExitOk;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open '" << path << "' for writing\n";
    return kExitUsage;
  }
  f << content;
  if (!f.good()) {
    std::cerr << "error: write to '" << path << "' failed\n";
    return kExitUsage;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- region --

int cmd_region(const CommonOptions& o) {
  const DbRange ps = parse_range(o.ps_db);
  const DbRange pr = parse_range(o.pr_db);

  struct Row {
    double ps_db, rho;
    int ns;
  };
  std::vector<Row> rows;
  for (double p : ps.values())
    for (double rho : o.rho)
      for (int ns : o.ns) rows.push_back({p, rho, ns});

  // boundary rows are independent; farm them out and emit in input order
  std::vector<std::string> lines(rows.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < rows.size();
         i = next.fetch_add(1)) {
      const Row& r = rows[i];
      const mer::SystemConfig cfg(r.ns, o.nr, mer::db_to_linear(r.ps_db), 1.0);
      const auto corr = mer::build_constant_correlation(r.rho, o.nr);
      const auto exact = mer::mer_boundary_pr_db(
          cfg, corr, mer::MerCriterion::exact, pr.start, pr.stop);
      const auto large = mer::mer_boundary_pr_db(
          cfg, corr, mer::MerCriterion::large_ns, pr.start, pr.stop);
      const auto jensen = mer::mer_boundary_pr_db(
          cfg, corr, mer::MerCriterion::jensen, pr.start, pr.stop);
      lines[i] = fmt(r.ps_db) + "," + fmt(r.rho) + "," + std::to_string(r.ns) +
                 "," + fmt(boundary_value(exact)) + "," +
                 fmt(boundary_value(large)) + "," +
                 fmt(boundary_value(jensen)) + "\n";
    }
  };
  const unsigned hw = std::thread::hardware_concurrency();
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(rows.size(), hw ? hw : 1));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::string csv =
      "p_s_db,rho,n_s,p_r_boundary_exact_db,p_r_boundary_large_ns_db,"
      "p_r_boundary_jensen_db\n";
  for (const auto& l : lines) csv += l;
  return write_output(o.out, csv);
}

// ----------------------------------------------------------------- curve --

int cmd_curve(const CommonOptions& o) {
  const DbRange ps = parse_range(o.ps_db);
  if (ps.values().size() != 1) {
    std::cerr << "error: curve expects a single --ps-db value\n";
    return kExitUsage;
  }
  const double ps_db = ps.start;
  const DbRange pr = parse_range(o.pr_db);
  const int ns = o.ns.front();
  const double unit = o.bits ? 1.0 / std::log(2.0) : 1.0;

  std::string csv =
      "p_r_db,rho,cap_mer_nats,cap_mer_se,cap_opt_nats,cap_opt_se,mer_optimal\n";
  for (double pr_db : pr.values()) {
    for (double rho : o.rho) {
      const mer::SystemConfig cfg(ns, o.nr, mer::db_to_linear(ps_db),
                                  mer::db_to_linear(pr_db));
      const auto corr = mer::build_constant_correlation(rho, o.nr);
      // shared seed: where the optimizer collapses onto the MER allocation
      // the two capacity columns agree sample-for-sample
      const auto mer_cap = mer::capacity_of_allocation(
          cfg, corr, mer::mer_allocation(cfg, corr), o.samples, o.seed);
      const auto opt = mer::optimize_allocation(cfg, corr, o.samples, o.seed);
      const auto report = mer::mer_exact_condition(cfg, corr);
      csv += fmt(pr_db) + "," + fmt(rho) + "," + fmt(mer_cap.mean * unit) +
             "," + fmt(mer_cap.std_error * unit) + "," +
             fmt(opt.capacity.mean * unit) + "," +
             fmt(opt.capacity.std_error * unit) + "," +
             (report.exact_optimal ? "1" : "0") + "\n";
    }
  }
  return write_output(o.out, csv);
}

// ----------------------------------------------------------------- check --

int cmd_check(const CommonOptions& o, bool verify, bool json) {
  const double ps_db = parse_range(o.ps_db).start;
  const double pr_db = parse_range(o.pr_db).start;
  const double rho = o.rho.front();
  const int ns = o.ns.front();

  const mer::SystemConfig cfg(ns, o.nr, mer::db_to_linear(ps_db),
                              mer::db_to_linear(pr_db));
  const auto corr = mer::build_constant_correlation(rho, o.nr);
  const auto rep = mer::mer_exact_condition(cfg, corr);

  std::optional<mer::McEstimate> fd;
  if (verify && o.nr >= 2) {
    fd = mer::finite_difference_derivative(cfg, corr, rep.total_gain,
                                           1e-3 * rep.total_gain, o.samples,
                                           o.seed);
  }
  const bool fd_agrees =
      fd && (std::signbit(fd->mean) == std::signbit(rep.margin_exact) ||
             std::abs(rep.margin_exact) < 2.0 * fd->std_error);

  const std::string decision = rep.exact_degenerate ? "degenerate"
                               : rep.exact_optimal  ? "optimal"
                                                    : "not_optimal";
  if (json) {
    nlohmann::json j{
        {"p_s_db", ps_db},
        {"p_r_db", pr_db},
        {"rho", rho},
        {"n_s", ns},
        {"n_r", o.nr},
        {"total_eigen_gain", rep.total_gain},
        {"margin_exact", rep.margin_exact},
        {"threshold_exact", rep.threshold_exact},
        {"lhs_lambda2sq", rep.lhs_lambda2sq},
        {"decision", decision},
        {"exact_optimal", rep.exact_optimal},
        {"exact_degenerate", rep.exact_degenerate},
        {"jensen",
         {{"certifies", rep.jensen_certifies},
          {"lhs", rep.jensen_lhs},
          {"rhs", rep.jensen_rhs}}},
        {"large_ns",
         {{"optimal", rep.large_ns_optimal},
          {"degenerate", rep.large_ns_degenerate},
          {"threshold", rep.large_ns_threshold},
          {"a1", rep.a1}}},
        {"d", rep.d},
        {"e_inv_z", rep.e_inv_z},
        {"e_gy_over_z", rep.e_gy_over_z},
    };
    if (fd) {
      j["verify"] = {{"fd_mean", fd->mean},
                     {"fd_std_error", fd->std_error},
                     {"n_samples", fd->n_samples},
                     {"agrees", fd_agrees}};
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("p_s_db:            %.17g\n", ps_db);
    std::printf("p_r_db:            %.17g\n", pr_db);
    std::printf("rho:               %.17g\n", rho);
    std::printf("n_s, n_r:          %d, %d\n", ns, o.nr);
    std::printf("total_eigen_gain:  %.17g\n", rep.total_gain);
    std::printf("margin_exact:      %.17g\n", rep.margin_exact);
    std::printf("threshold_exact:   %.17g\n", rep.threshold_exact);
    std::printf("lhs_lambda2sq:     %.17g\n", rep.lhs_lambda2sq);
    std::printf("e_inv_z:           %.17g\n", rep.e_inv_z);
    std::printf("e_gy_over_z:       %.17g\n", rep.e_gy_over_z);
    std::printf("jensen_certifies:  %s (lhs %.17g, rhs %.17g)\n",
                rep.jensen_certifies ? "true" : "false", rep.jensen_lhs,
                rep.jensen_rhs);
    std::printf("large_ns_optimal:  %s (threshold %.17g, a1 %.17g)\n",
                rep.large_ns_optimal ? "true" : "false",
                rep.large_ns_threshold, rep.a1);
    std::printf("d:                 %.17g\n", rep.d);
    if (fd) {
      std::printf("fd_derivative:     %.17g (se %.17g, n %llu) -> %s\n",
                  fd->mean, fd->std_error,
                  static_cast<unsigned long long>(fd->n_samples),
                  fd_agrees ? "agrees" : "DISAGREES");
    }
    std::printf("decision:          %s\n", decision.c_str());
  }
  if (rep.exact_degenerate) return kExitDegenerate;
  return rep.exact_optimal ? kExitOk : kExitNotOptimal;
}

// -------------------------------------------------------------- optimize --

int cmd_optimize(const CommonOptions& o) {
  const double ps_db = parse_range(o.ps_db).start;
  const double pr_db = parse_range(o.pr_db).start;
  const mer::SystemConfig cfg(o.ns.front(), o.nr, mer::db_to_linear(ps_db),
                              mer::db_to_linear(pr_db));
  const auto corr = mer::build_constant_correlation(o.rho.front(), o.nr);
  const auto res = mer::optimize_allocation(cfg, corr, o.samples, o.seed);
  const double unit = o.bits ? 1.0 / std::log(2.0) : 1.0;

  std::printf("alpha:         %.17g\n", res.alpha);
  std::string w, g;
  for (std::size_t j = 0; j < res.weights.size(); ++j) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g ", res.weights[j]);
    w += buf;
    std::snprintf(buf, sizeof buf, "%.17g ", res.best_alloc.gains(j));
    g += buf;
  }
  std::printf("weights:       %s\n", w.c_str());
  std::printf("gains:         %s\n", g.c_str());
  std::printf("capacity_%s: %.17g\n", o.bits ? "bits" : "nats",
              res.capacity.mean * unit);
  std::printf("std_error:     %.17g\n", res.capacity.std_error * unit);
  std::printf("power_used:    %.17g of %.17g\n",
              mer::relay_power_used(res.best_alloc, corr, cfg),
              cfg.relay_power());
  std::printf("iterations:    %d\n", res.iterations);
  std::printf("converged:     %s\n", res.converged ? "true" : "false");
  if (!res.converged) {
    std::printf("diagnostics:   %s\n", res.diagnostics.c_str());
    return kExitNoConvergence;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Optimal eigenmode relay precoding: optimality criteria, capacity "
      "sweeps and allocation search for the two-hop MIMO relay channel"};
  app.require_subcommand(1);

  CommonOptions region_opt, curve_opt, check_opt, optimize_opt;
  bool verify = false, json = false;

  CLI::App* region = app.add_subcommand(
      "region", "MER optimality-region boundaries over a (P_S, P_R) grid");
  region_opt.ps_db = "0:20:1";
  region_opt.pr_db = "-40:60";
  add_common(region, region_opt);

  CLI::App* curve = app.add_subcommand(
      "curve", "MER vs optimized ergodic capacity along a relay-power sweep");
  curve_opt.pr_db = "4:24:2";
  add_common(curve, curve_opt);

  CLI::App* check = app.add_subcommand(
      "check", "evaluate the optimality criteria at a single operating point");
  add_common(check, check_opt);
  check->add_flag("--verify", verify,
                  "cross-check the analytic margin against a finite-difference "
                  "Monte Carlo derivative");
  check->add_flag("--json", json, "emit a JSON report instead of text");

  CLI::App* optimize = app.add_subcommand(
      "optimize", "search the constraint-saturating eigenmode splits");
  add_common(optimize, optimize_opt);

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    // expand --config before parsing so that explicit flags keep precedence
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
      else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
    }
    if (!config_path.empty() && !args.empty()) {
      const auto extra = config_tokens(config_path, args);
      args.insert(args.begin() + 1, extra.begin(), extra.end());
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::vector<const char*> argp{argv[0]};
  for (const auto& a : args) argp.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argp.size()), argp.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (region->parsed()) return cmd_region(region_opt);
    if (curve->parsed()) return cmd_curve(curve_opt);
    if (check->parsed()) return cmd_check(check_opt, verify, json);
    if (optimize->parsed()) return cmd_optimize(optimize_opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
