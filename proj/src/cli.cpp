#include "engset/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "engset/solve.hpp"
#include "engset/turan.hpp"

namespace engset::cli {

namespace {

using nlohmann::json;

// Exit statuses: 0 converged / checks passed, 1 invalid input, 2 the
// requested computation did not converge or a check failed.
constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitNotConverged = 2;

// 4-significant-digit scientific form used for text output, e.g. 8.322e-01.
std::string sci4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

// Shortest round-trip form for CSV.
std::string full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct InstanceFlags {
  int sources = 0;
  double alpha = 0.0;
  double total_traffic = 0.0;
  bool has_alpha = false;
  bool has_traffic = false;

  void add_traffic_options(CLI::App* cmd) {
    cmd->add_option("--alpha", alpha, "Offered traffic per source (erlangs)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--total-traffic", total_traffic,
                    "Total offered traffic E; alpha = E/N")
        ->check(CLI::NonNegativeNumber);
  }

  // Resolves --alpha / --total-traffic (exactly one must be given).
  std::optional<double> resolve_alpha(const CLI::App& cmd, std::ostream& err) {
    has_alpha = cmd.count("--alpha") > 0;
    has_traffic = cmd.count("--total-traffic") > 0;
    if (has_alpha == has_traffic) {
      err << "error: give exactly one of --alpha or --total-traffic\n";
      return std::nullopt;
    }
    return has_alpha ? alpha : total_traffic / sources;
  }
};

int exit_code_for(SolveStatus status) {
  return status == SolveStatus::converged ? kExitOk : kExitNotConverged;
}

int cmd_solve(int servers, int sources, double alpha, const SolverConfig& cfg,
              Method method, const std::string& format, std::ostream& out,
              std::ostream& err) {
  SolveResult res;
  try {
    res = solve(servers, sources, alpha, cfg, method);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  if (format == "json") {
    json j{{"p_star", res.p_star},
           {"iterations", res.iterations},
           {"method", to_string(res.method)},
           {"status", to_string(res.status)},
           {"residual", res.residual}};
    out << j.dump() << "\n";
  } else {
    out << "p_star: " << sci4(res.p_star) << "\n"
        << "iterations: " << res.iterations << "\n"
        << "method: " << to_string(res.method) << "\n"
        << "status: " << to_string(res.status) << "\n"
        << "residual: " << sci4(res.residual) << "\n";
  }
  return exit_code_for(res.status);
}

struct TableRow {
  int m;
  double p_star;
  std::optional<int> fixed_point_iters;  // nullopt = FAIL
  std::optional<int> newton_iters;
};

int cmd_table(int sources, double alpha, int lo, int hi,
              const std::string& format, std::ostream& out, std::ostream&) {
  const SolverConfig cfg;  // P0 = 1/2, tol = 2^-24, cap 10000
  std::vector<TableRow> rows;
  rows.reserve(hi - lo + 1);
  for (int m = lo; m <= hi; ++m) {
    TableRow row;
    row.m = m;
    row.p_star = solve(m, sources, alpha, cfg, Method::automatic).p_star;
    const SolveResult fp = solve(m, sources, alpha, cfg, Method::fixed_point);
    if (fp.status == SolveStatus::converged)
      row.fixed_point_iters = fp.iterations;
    const SolveResult nt = solve(m, sources, alpha, cfg, Method::newton);
    if (nt.status == SolveStatus::converged) row.newton_iters = nt.iterations;
    rows.push_back(row);
  }

  auto count_or_fail = [](const std::optional<int>& n) {
    return n ? std::to_string(*n) : std::string("FAIL");
  };
  if (format == "json") {
    json arr = json::array();
    for (const TableRow& r : rows) {
      json row{{"m", r.m}, {"p_star", r.p_star}};
      row["fixed_point_iters"] =
          r.fixed_point_iters ? json(*r.fixed_point_iters) : json(nullptr);
      row["newton_iters"] = r.newton_iters ? json(*r.newton_iters) : json(nullptr);
      arr.push_back(row);
    }
    out << arr.dump() << "\n";
  } else if (format == "csv") {
    out << "m,p_star,fixed_point_iters,newton_iters\n";
    for (const TableRow& r : rows)
      out << r.m << "," << full(r.p_star) << "," << count_or_fail(r.fixed_point_iters)
          << "," << count_or_fail(r.newton_iters) << "\n";
  } else {
    out << std::setw(4) << "m" << std::setw(12) << "p_star" << std::setw(14)
        << "fixed-point" << std::setw(9) << "newton" << "\n";
    for (const TableRow& r : rows)
      out << std::setw(4) << r.m << std::setw(12) << sci4(r.p_star)
          << std::setw(14) << count_or_fail(r.fixed_point_iters) << std::setw(9)
          << count_or_fail(r.newton_iters) << "\n";
  }
  return kExitOk;
}

int cmd_trace(int servers, int sources, double alpha, SolverConfig cfg,
              Method method, const std::string& format, std::ostream& out,
              std::ostream& err) {
  cfg.trace = true;
  SolveResult res;
  try {
    res = solve(servers, sources, alpha, cfg, method);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  if (format == "json") {
    json arr = json::array();
    for (std::size_t n = 0; n < res.trace.size(); ++n)
      arr.push_back({{"n", n}, {"p", res.trace[n]}});
    out << arr.dump() << "\n";
  } else {
    out << "n,p\n";
    for (std::size_t n = 0; n < res.trace.size(); ++n)
      out << n << "," << full(res.trace[n]) << "\n";
  }
  return exit_code_for(res.status);
}

int cmd_turan(int b, double c, double x_max, int samples, std::uint64_t seed,
              std::ostream& out, std::ostream& err) {
  std::vector<double> xs;
  xs.reserve(samples + 2);
  xs.push_back(0.0);
  if (x_max > 0.0) xs.push_back(x_max);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, x_max);
  for (int i = 0; i < samples; ++i) xs.push_back(dist(rng));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  double min_gap = std::numeric_limits<double>::infinity();
  bool monotone = false;
  try {
    for (double x : xs)
      min_gap = std::min(min_gap, turan::turan_gap(turan::TuranInstance(b, c, x)));
    monotone = turan::ratio_monotone_check(b, c, xs);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  const bool pass = min_gap >= -turan::kGapSlack && monotone;
  out << "b: " << b << "  c: " << full(c) << "  x_max: " << full(x_max)
      << "  points: " << xs.size() << "  seed: " << seed << "\n"
      << "min_gap: " << sci4(min_gap) << "\n"
      << "ratio_monotone: " << (monotone ? "yes" : "no") << "\n"
      << "verdict: " << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? kExitOk : kExitNotConverged;
}

bool parse_m_range(const std::string& text, int* lo, int* hi) {
  const auto colon = text.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == text.size())
    return false;
  try {
    std::size_t used = 0;
    *lo = std::stoi(text.substr(0, colon), &used);
    if (used != colon) return false;
    const std::string rest = text.substr(colon + 1);
    *hi = std::stoi(rest, &used);
    if (used != rest.size()) return false;
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Engset blocking probability (M/M/m/m/N) solver"};
  app.require_subcommand(1);

  // solve
  auto* solve_cmd =
      app.add_subcommand("solve", "Solve one instance for P*");
  int servers = 0;
  InstanceFlags inst;
  std::string method_name = "auto";
  SolverConfig cfg;
  std::string format = "text";
  solve_cmd->add_option("--servers", servers, "Number of servers m")
      ->required()
      ->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--sources", inst.sources, "Number of sources N")
      ->required()
      ->check(CLI::PositiveNumber);
  inst.add_traffic_options(solve_cmd);
  solve_cmd->add_option("--method", method_name, "Root-finding method")
      ->check(CLI::IsMember({"bisection", "fixed-point", "newton", "auto"}));
  solve_cmd->add_option("--tol", cfg.tol, "Stopping tolerance (default 2^-24)");
  solve_cmd->add_option("--p0", cfg.p0, "Initial guess (default 0.5)");
  solve_cmd->add_option("--max-iter", cfg.max_iter, "Iteration cap");
  solve_cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));

  // table
  auto* table_cmd = app.add_subcommand(
      "table", "Per-m comparison table (P*, fixed-point and Newton counts)");
  InstanceFlags table_inst;
  std::string m_range;
  std::string table_format = "text";
  table_cmd->add_option("--sources", table_inst.sources, "Number of sources N")
      ->required()
      ->check(CLI::PositiveNumber);
  table_inst.add_traffic_options(table_cmd);
  table_cmd->add_option("--m-range", m_range, "Server range lo:hi (default 1:N-1)");
  table_cmd->add_option("--format", table_format, "Output format")
      ->check(CLI::IsMember({"text", "csv", "json"}));

  // trace
  auto* trace_cmd =
      app.add_subcommand("trace", "Emit the iterate sequence (n, P_n)");
  int trace_servers = 0;
  InstanceFlags trace_inst;
  std::string trace_method;
  SolverConfig trace_cfg;
  std::string trace_format = "csv";
  trace_cmd->add_option("--servers", trace_servers, "Number of servers m")
      ->required()
      ->check(CLI::NonNegativeNumber);
  trace_cmd->add_option("--sources", trace_inst.sources, "Number of sources N")
      ->required()
      ->check(CLI::PositiveNumber);
  trace_inst.add_traffic_options(trace_cmd);
  trace_cmd->add_option("--method", trace_method, "Iteration to trace")
      ->required()
      ->check(CLI::IsMember({"fixed-point", "newton"}));
  trace_cmd->add_option("--p0", trace_cfg.p0, "Initial guess (default 0.5)");
  trace_cmd->add_option("--max-iter", trace_cfg.max_iter, "Iteration cap");
  trace_cmd->add_option("--format", trace_format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));

  // turan
  auto* turan_cmd = app.add_subcommand(
      "turan", "Spot-check the Turan-type inequality for h_n(x)");
  int turan_b = 0;
  double turan_c = 0.0;
  double x_max = 50.0;
  int samples = 100;
  std::uint64_t seed = 0;
  turan_cmd->add_option("--b", turan_b, "Positive integer parameter b")
      ->required();
  turan_cmd->add_option("--c", turan_c, "Positive real parameter c")->required();
  turan_cmd->add_option("--x-max", x_max, "Sample x uniformly in [0, x-max]");
  turan_cmd->add_option("--samples", samples, "Number of x samples");
  turan_cmd->add_option("--seed", seed, "RNG seed");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("engset");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  try {
    if (solve_cmd->parsed()) {
      const std::optional<double> alpha = inst.resolve_alpha(*solve_cmd, err);
      if (!alpha) return kExitInvalid;
      return cmd_solve(servers, inst.sources, *alpha, cfg,
                       *method_from_string(method_name), format, out, err);
    }
    if (table_cmd->parsed()) {
      const std::optional<double> alpha = table_inst.resolve_alpha(*table_cmd, err);
      if (!alpha) return kExitInvalid;
      int lo = 1, hi = table_inst.sources - 1;
      if (!m_range.empty() && !parse_m_range(m_range, &lo, &hi)) {
        err << "error: --m-range must be lo:hi\n";
        return kExitInvalid;
      }
      if (lo < 1 || hi > table_inst.sources - 1 || lo > hi) {
        err << "error: --m-range must satisfy 1 <= lo <= hi <= N-1\n";
        return kExitInvalid;
      }
      return cmd_table(table_inst.sources, *alpha, lo, hi, table_format, out, err);
    }
    if (trace_cmd->parsed()) {
      const std::optional<double> alpha = trace_inst.resolve_alpha(*trace_cmd, err);
      if (!alpha) return kExitInvalid;
      return cmd_trace(trace_servers, trace_inst.sources, *alpha, trace_cfg,
                       *method_from_string(trace_method), trace_format, out, err);
    }
    if (turan_cmd->parsed()) {
      if (turan_b < 1 || !(turan_c > 0.0) || !(x_max >= 0.0) || samples < 1) {
        err << "error: turan requires b >= 1, c > 0, x-max >= 0, samples >= 1\n";
        return kExitInvalid;
      }
      return cmd_turan(turan_b, turan_c, x_max, samples, seed, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace engset::cli
