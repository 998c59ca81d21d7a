// Command-line front end: solve scenarios, run verification and regularity
// pipelines, emit CSV/JSON artifacts and convergence tables.
//
// Exit codes: 0 all checks passed, 1 a verification check failed,
// 2 usage or I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eikonal/eikonal.hpp"

namespace {

using namespace eikonal;

struct CommonOpts {
  std::string scenario;
  std::string file;
  double h = 0.0;
  int refine = 1;
  double quad = 64.0;
  std::string radii_csv;
  double tol = tolerances::monge_tol;
  std::string out = "out";
  int workers = 1;
  unsigned seed = 0;
  double truncate_M = 0.0;
  std::string null_sets_file;
};

std::vector<double> parse_csv_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw ParseError("bad numeric list entry '" + tok + "'");
    }
  }
  return out;
}

ScenarioParams make_params(const CommonOpts& opts) {
  ScenarioParams p;
  p.h = opts.h;
  p.quad_points = opts.quad;
  p.refine = opts.refine;
  if (!opts.radii_csv.empty()) p.radii = parse_csv_doubles(opts.radii_csv);
  p.monge_tol = opts.tol;
  p.seed = opts.seed;
  p.workers = opts.workers;
  p.out_dir = opts.out;
  return p;
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_source = true) {
  cmd->set_help_flag("--help", "print help");  // leave -h free: --h is the grid pitch
  auto* s = cmd->add_option("--scenario", opts.scenario, "built-in scenario name");
  auto* f = cmd->add_option("--file", opts.file, "scenario description file (JSON)");
  if (needs_source) {
    s->excludes(f);
  }
  cmd->add_option("--h", opts.h, "grid pitch / resolution parameter");
  cmd->add_option("--refine", opts.refine, "edge subdivision factor applied after build");
  cmd->add_option("--quad", opts.quad, "quadrature density floor (points per unit length)");
  cmd->add_option("--radii", opts.radii_csv, "slope radii, comma separated, decreasing");
  cmd->add_option("--tol", opts.tol, "verification tolerance");
  cmd->add_option("--out", opts.out, "output directory for artifacts");
  cmd->add_option("--workers", opts.workers, "worker threads for independent solves");
  cmd->add_option("--seed", opts.seed, "seed for sampled checks");
  cmd->add_option("--truncate-M", opts.truncate_M, "truncation level for the running cost");
  cmd->add_option("--null-sets", opts.null_sets_file, "JSON file with extra null-set markings");
}

void print_report(const ScenarioReport& report, const std::string& category = "") {
  for (const auto& c : report.checks) {
    if (!category.empty() && c.category != category) continue;
    std::printf("%-4s %-45s observed=%-12.6g %s %.6g\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                c.observed, c.kind == "le" ? "<=" : (c.kind == "ge" ? ">=" : "=="), c.expected);
  }
  for (const auto& n : report.notes) std::printf("note: %s\n", n.c_str());
  std::printf("%s: %s (%.2fs)\n", report.name.c_str(),
              (category.empty() ? report.pass() : report.pass(category)) ? "all checks passed"
                                                                         : "FAILURES",
              report.runtime_seconds);
}

ScenarioReport run_from_opts(const CommonOpts& opts) {
  const auto params = make_params(opts);
  if (!opts.file.empty()) {
    BuiltScenario b = load_scenario_file(opts.file);
    if (!opts.null_sets_file.empty()) {
      std::ifstream in(opts.null_sets_file);
      if (!in) throw Error("cannot open " + opts.null_sets_file);
      nlohmann::json j;
      in >> j;
      for (const auto& jm : j) {
        NullSetMarking m;
        m.name = jm.value("name", "marking");
        if (jm.contains("blocked_edges"))
          for (const auto& e : jm["blocked_edges"]) m.blocked_edges.insert(e.get<EdgeId>());
        if (jm.contains("passable_vertices"))
          for (const auto& v : jm["passable_vertices"])
            m.passable_vertices.insert(v.get<VertexId>());
        m.validate(b.graph);
        b.family.push_back(std::move(m));
      }
    }
    return run_loaded_scenario(b, params);
  }
  if (opts.scenario.empty()) throw ParseError("one of --scenario or --file is required");
  return run_scenario(opts.scenario, params);
}

int run_solve(const CommonOpts& opts) {
  ScenarioReport report = run_from_opts(opts);
  print_report(report, "solve");
  return report.pass("solve") ? 0 : 1;
}

int run_verify(const CommonOpts& opts) {
  ScenarioReport report = run_from_opts(opts);
  print_report(report, "verify");
  return report.pass("verify") && report.pass("transversal") ? 0 : 1;
}

int run_regularity(const CommonOpts& opts) {
  ScenarioReport report = run_from_opts(opts);
  print_report(report, "regularity");
  return report.pass("regularity") ? 0 : 1;
}

int run_transversal(const CommonOpts& opts) {
  ScenarioReport report = run_from_opts(opts);
  print_report(report, "transversal");
  return report.pass("transversal") ? 0 : 1;
}

int run_full(const CommonOpts& opts) {
  ScenarioReport report = run_from_opts(opts);
  print_report(report);
  return report.pass() ? 0 : 1;
}

int run_convergence(const CommonOpts& opts, const std::string& h_list,
                    const std::string& m_list) {
  Quadrature quad;
  quad.points_per_unit = opts.quad;
  if (!opts.scenario.empty() && opts.scenario != "interval_sqrt")
    throw ParseError("convergence is wired to the interval_sqrt closed form");
  const std::vector<double> hs =
      h_list.empty() ? std::vector<double>{1e-1, 1e-2, 1e-3} : parse_csv_doubles(h_list);
  std::printf("# h sweep (sup error against the closed form)\n");
  std::printf("%-12s %-14s\n", "h", "sup_error");
  const auto rows = interval_sqrt_h_sweep(hs, quad);
  bool decreasing = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::printf("%-12g %-14.6g\n", rows[i].parameter, rows[i].sup_error);
    if (i > 0 && !(rows[i].sup_error < rows[i - 1].sup_error)) decreasing = false;
  }
  const std::vector<double> Ms =
      m_list.empty() ? std::vector<double>{10.0, 100.0, 1000.0} : parse_csv_doubles(m_list);
  const double h_fix = opts.h > 0 ? opts.h : 1e-3;
  std::printf("# truncation sweep at h = %g (sup|u_M - u|)\n", h_fix);
  std::printf("%-12s %-14s\n", "M", "sup_gap");
  const auto trows = interval_sqrt_truncation_sweep(h_fix, Ms, quad);
  for (std::size_t i = 0; i < trows.size(); ++i) {
    std::printf("%-12g %-14.6g\n", trows[i].parameter, trows[i].sup_error);
    if (i > 0 && !(trows[i].sup_error < trows[i - 1].sup_error)) decreasing = false;
  }
  std::printf("monotone decrease: %s\n", decreasing ? "yes" : "NO");
  return decreasing ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eikgraph - eikonal solver and verifier on metric graphs"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string h_list, m_list;

  auto* solve = app.add_subcommand("solve", "build and solve, write artifacts");
  add_common(solve, opts);
  auto* verify = app.add_subcommand("verify", "slope-based solution verification");
  add_common(verify, opts);
  auto* regularity = app.add_subcommand("regularity", "dimension and exponent estimates");
  add_common(regularity, opts);
  auto* transversal = app.add_subcommand("transversal", "null-set marking pipeline");
  add_common(transversal, opts);
  auto* scenario = app.add_subcommand("scenario", "full oracle run for a scenario");
  add_common(scenario, opts);
  auto* convergence = app.add_subcommand("convergence", "resolution and truncation sweeps");
  add_common(convergence, opts);
  convergence->add_option("--h-list", h_list, "grid pitches, comma separated");
  convergence->add_option("--m-list", m_list, "truncation levels, comma separated");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) return run_solve(opts);
    if (verify->parsed()) return run_verify(opts);
    if (regularity->parsed()) return run_regularity(opts);
    if (transversal->parsed()) return run_transversal(opts);
    if (scenario->parsed()) return run_full(opts);
    if (convergence->parsed()) return run_convergence(opts, h_list, m_list);
  } catch (const UnknownScenario& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 2;
  }
  return 2;
}
