#pragma once

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "eikonal/expression.hpp"
#include "eikonal/regularity.hpp"
#include "eikonal/transversal.hpp"

namespace eikonal {

/// Tolerances and thresholds shared by the scenario oracles and the
/// acceptance suite (one source of truth).
namespace tolerances {
inline constexpr double interval_sup_err = 5e-3;
inline constexpr double comb_exact = 1e-9;
inline constexpr double loss_exact = 1e-9;
inline constexpr double disk_value_tol = 5e-2;
inline constexpr double disk_lower_bound = 0.45;
inline constexpr double monge_tol = 0.05;
inline constexpr double monge_pass_fraction = 0.95;
inline constexpr double holder_exponent_tol = 0.05;
inline constexpr double holder_constant_tol = 0.2;
inline constexpr double q_interval_tol = 0.1;
inline constexpr double q_disk_tol = 0.15;
inline constexpr double circle_sup_err = 5e-3;
inline constexpr double circle_collar = 0.2;  // excluded angle collar above -pi
inline constexpr double blocked_min_gap = 0.5;
}  // namespace tolerances

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct OracleCheck {
  std::string name;
  std::string category;  // solve | verify | regularity | transversal
  std::string kind;      // eq | le | ge | bool
  double observed = 0.0;
  double expected = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string provenance;
};

struct ScenarioReport {
  std::string name;
  double h = 0.0;
  double quad_points = 0.0;
  std::vector<OracleCheck> checks;
  std::vector<std::string> notes;
  double runtime_seconds = 0.0;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  bool pass(const std::string& category) const {
    for (const auto& c : checks)
      if (c.category == category && !c.pass) return false;
    return true;
  }
  void add_eq(const std::string& name, const std::string& cat, double observed, double expected,
              double tol, const std::string& prov) {
    checks.push_back({name, cat, "eq", observed, expected, tol,
                      std::isfinite(observed) && std::abs(observed - expected) <= tol, prov});
  }
  void add_le(const std::string& name, const std::string& cat, double observed, double bound,
              const std::string& prov) {
    checks.push_back({name, cat, "le", observed, bound, 0.0, observed <= bound, prov});
  }
  void add_ge(const std::string& name, const std::string& cat, double observed, double bound,
              const std::string& prov) {
    checks.push_back({name, cat, "ge", observed, bound, 0.0, observed >= bound, prov});
  }
  void add_bool(const std::string& name, const std::string& cat, bool ok,
                const std::string& prov) {
    checks.push_back({name, cat, "bool", ok ? 1.0 : 0.0, 1.0, 0.0, ok, prov});
  }
};

struct ScenarioParams {
  double h = 0.0;           // 0 = scenario default
  double quad_points = 64.0;
  int refine = 1;
  std::vector<double> radii;  // slope radii override
  double monge_tol = tolerances::monge_tol;
  unsigned seed = 0;
  int workers = 1;
  std::string out_dir;  // empty = no artifacts
  std::vector<double> truncate_levels;
};

inline Quadrature make_quadrature(const ScenarioParams& params) {
  Quadrature q;
  q.points_per_unit = params.quad_points;
  return q;
}

// ---------------------------------------------------------------------------
// Built scenarios: graph + field + data + (optional) marking family
// ---------------------------------------------------------------------------

struct BuiltScenario {
  std::string name;
  MetricGraph graph;
  WeightField field;
  std::map<VertexId, double> g;
  std::vector<NullSetMarking> family;
  // Oracle callbacks bound at build time (closed forms, special vertices).
  std::function<double(const Point&)> exact_u;  // may be null
  std::vector<VertexId> oracle_vertices;
};

namespace detail {

inline std::vector<VertexId> interior_sample(const MetricGraph& g, std::size_t cap) {
  std::vector<VertexId> interior;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (!g.vertex(static_cast<VertexId>(v)).boundary) interior.push_back(static_cast<VertexId>(v));
  if (interior.size() <= cap) return interior;
  std::vector<VertexId> out;
  const std::size_t stride = interior.size() / cap;
  for (std::size_t i = 0; i < interior.size(); i += stride) out.push_back(interior[i]);
  return out;
}

inline MetricGraph flag_vertex(MetricGraph g, VertexId v) {
  auto vertices = g.vertices();
  vertices[static_cast<std::size_t>(v)].boundary = true;
  auto edges = g.edges();
  auto meta = g.meta();
  return MetricGraph(std::move(vertices), std::move(edges), std::move(meta));
}

}  // namespace detail

// --- interval with f = 1/sqrt|x| -------------------------------------------

inline BuiltScenario build_interval_sqrt(double h) {
  BuiltScenario b;
  b.name = "interval_sqrt";
  DomainSpec dom;
  dom.shape = DomainSpec::Shape::Interval;
  dom.x0 = -1.0;
  dom.x1 = 1.0;
  b.graph = grid_domain(dom, h, 4, b.name);
  b.field = WeightField::pointwise(
      [](const Point& p) {
        const double a = std::abs(p[0]);
        return a > 0 ? 1.0 / std::sqrt(a) : inf();
      },
      1.0, Integrability::Lp, 1.5);
  for (VertexId v : b.graph.boundary_vertices()) b.g[v] = 0.0;
  b.exact_u = [](const Point& p) { return 2.0 * (1.0 - std::sqrt(std::abs(p[0]))); };
  return b;
}

// --- comb graph -------------------------------------------------------------

inline BuiltScenario build_comb(int teeth) {
  if (teeth < 2) throw ParseError("comb scenario needs at least 2 teeth");
  BuiltScenario b;
  b.name = "comb";
  GraphSpec spec;
  spec.name = b.name;
  spec.ambient_dimension = 2;
  // id 0: O; id j: P_j = (1/j, 0); id teeth+j: Q_j = (1/j, 1/j).
  spec.vertices.push_back({0, Point{0.0, 0.0, 0.0}, false});
  for (int j = 1; j <= teeth; ++j)
    spec.vertices.push_back({j, Point{1.0 / j, 0.0, 0.0}, false});
  for (int j = 1; j <= teeth; ++j)
    spec.vertices.push_back({teeth + j, Point{1.0 / j, 1.0 / j, 0.0}, j == 1});
  for (int j = 1; j < teeth; ++j) {
    const double len = 1.0 / j - 1.0 / (j + 1);
    spec.edges.push_back({j + 1, j, len, len});
  }
  spec.edges.push_back({0, teeth, 1.0 / teeth, 1.0 / teeth});
  for (int j = 1; j <= teeth; ++j)
    spec.edges.push_back({j, teeth + j, 1.0 / j, 1.0 / j});
  b.graph = build_graph(spec);
  b.field = WeightField::pointwise(
      [](const Point& p) { return p[1] > 0.0 ? 1.0 / p[0] : 1.0; }, 1.0);
  b.g[static_cast<VertexId>(teeth + 1)] = 0.0;  // Q_1
  return b;
}

inline VertexId comb_O() { return 0; }
inline VertexId comb_P(int j) { return static_cast<VertexId>(j); }
inline VertexId comb_Q(int teeth, int j) { return static_cast<VertexId>(teeth + j); }

inline std::vector<double> comb_monge_radii() { return {2.2, 1.8, 1.5, 1.2, 1.05}; }

// --- circle with one boundary point ----------------------------------------

inline BuiltScenario build_circle(int n) {
  if (n < 8 || n % 2 != 0) throw ParseError("circle scenario needs an even vertex count >= 8");
  BuiltScenario b;
  b.name = "circle";
  const double step = 2.0 * M_PI / n;
  auto angles = std::make_shared<std::vector<double>>();
  std::vector<Vertex> vertices;
  for (int k = 0; k < n; ++k) {
    const double theta = -M_PI + k * step;
    angles->push_back(theta);
    vertices.push_back(Vertex{static_cast<VertexId>(k),
                              Point{std::cos(theta), std::sin(theta), 0.0}, k == n / 2});
  }
  std::vector<Edge> edges;
  for (int k = 0; k < n; ++k)
    edges.push_back(Edge{static_cast<VertexId>(k), static_cast<VertexId>((k + 1) % n), step, step});
  GraphMeta meta;
  meta.name = b.name;
  meta.ambient_dimension = 2;
  b.graph = MetricGraph(std::move(vertices), std::move(edges), std::move(meta));

  // Arc-exact evaluator: the angle at arc parameter s along edge (k, k+1).
  b.field = WeightField(
      [angles](const MetricGraph& g, EdgeId e, double s) {
        const Edge& ed = g.edge(e);
        double theta = (*angles)[static_cast<std::size_t>(ed.u)] + s;
        if (theta > M_PI) theta -= 2.0 * M_PI;
        return theta >= 0.0 ? 1.0 / M_PI : 1.0 / (theta + M_PI);
      },
      1.0 / M_PI);
  b.g[static_cast<VertexId>(n / 2)] = 0.0;
  b.exact_u = [](const Point& p) {
    const double theta = std::atan2(p[1], p[0]);
    return theta >= 0.0 ? theta / M_PI : std::log(M_PI / (M_PI + theta));
  };
  return b;
}

// --- interval with data loss -----------------------------------------------

inline BuiltScenario build_interval_loss(double h) {
  BuiltScenario b;
  b.name = "interval_loss";
  DomainSpec dom;
  dom.shape = DomainSpec::Shape::Interval;
  dom.x0 = 0.0;
  dom.x1 = 1.0;
  b.graph = grid_domain(dom, h, 4, b.name);
  b.field = WeightField::constant(1.0);
  const VertexId left = b.graph.nearest_vertex(Point{0.0, 0.0, 0.0});
  const VertexId right = b.graph.nearest_vertex(Point{1.0, 0.0, 0.0});
  b.g[left] = 0.0;
  b.g[right] = 2.0;
  b.exact_u = [](const Point& p) { return p[0]; };
  return b;
}

// --- interval where no admissible curve exists ------------------------------

inline BuiltScenario build_interval_noncurve(double h) {
  BuiltScenario b;
  b.name = "interval_noncurve";
  DomainSpec dom;
  dom.shape = DomainSpec::Shape::Interval;
  dom.x0 = -1.0;
  dom.x1 = 1.0;
  MetricGraph g = grid_domain(dom, h, 4, b.name);
  const VertexId origin = g.nearest_vertex(Point{0.0, 0.0, 0.0});
  b.graph = detail::flag_vertex(std::move(g), origin);
  b.field = WeightField::pointwise(
      [](const Point& p) {
        const double a = std::abs(p[0]);
        return a > 0 ? 1.0 / a : inf();
      },
      1.0);
  b.g[origin] = 0.0;
  return b;
}

// --- punctured disk ---------------------------------------------------------

inline BuiltScenario build_punctured_disk(double h) {
  BuiltScenario b;
  b.name = "punctured_disk";
  DomainSpec dom;
  dom.shape = DomainSpec::Shape::Disk;
  dom.cx = 0.0;
  dom.cy = 0.0;
  dom.radius = 1.0;
  MetricGraph g = grid_domain(dom, h, 16, b.name);
  const VertexId origin = g.nearest_vertex(Point{0.0, 0.0, 0.0});
  b.graph = detail::flag_vertex(std::move(g), origin);
  // On the segment e1 = (0,1) x {0} the running cost is 1/sqrt(x1); off it
  // 1/|x|. Axis-aligned edges keep x2 == 0 exactly under interpolation, so
  // the grid row through the origin realizes e1.
  b.field = WeightField::pointwise(
      [](const Point& p) {
        if (p[1] == 0.0 && p[0] > 0.0) return 1.0 / std::sqrt(p[0]);
        const double r = std::hypot(p[0], p[1]);
        return r > 0 ? 1.0 / r : inf();
      },
      1.0, Integrability::Lp, 1.5);
  b.g[origin] = 0.0;
  return b;
}

// --- square with a blocked midline ------------------------------------------

inline BuiltScenario build_blocked_square(double h) {
  BuiltScenario b;
  b.name = "blocked_square";
  DomainSpec dom;
  dom.shape = DomainSpec::Shape::Rectangle;
  dom.x0 = 0.0;
  dom.x1 = 1.0;
  dom.y0 = 0.0;
  dom.y1 = 1.0;
  b.graph = grid_domain(dom, h, 4, b.name);
  b.field = WeightField::constant(1.0);
  for (const auto& v : b.graph.vertices())
    if (v.pos[0] == 0.0) b.g[v.id] = 0.0;

  // Wall: horizontal edges leaving the x = 0.5 column rightward, except the
  // top-row gap. Models a scenario-declared null set crossed only there.
  NullSetMarking wall;
  wall.name = "midline_wall";
  const double eps = h * 1e-6;
  for (std::size_t k = 0; k < b.graph.edge_count(); ++k) {
    const Edge& e = b.graph.edge(static_cast<EdgeId>(k));
    const Point& pu = b.graph.vertex(e.u).pos;
    const Point& pv = b.graph.vertex(e.v).pos;
    const double xlo = std::min(pu[0], pv[0]), xhi = std::max(pu[0], pv[0]);
    const bool crosses = std::abs(xlo - 0.5) < eps && xhi > 0.5 + eps;
    const bool gap_row = pu[1] > 1.0 - eps && pv[1] > 1.0 - eps;
    if (crosses && !gap_row) wall.blocked_edges.insert(static_cast<EdgeId>(k));
  }
  for (const auto& v : b.graph.vertices())
    if (std::abs(v.pos[0] - 0.5) < eps) wall.passable_vertices.insert(v.id);
  b.family.push_back(std::move(wall));
  return b;
}

// ---------------------------------------------------------------------------
// Scenario runners
// ---------------------------------------------------------------------------

namespace detail {

inline void write_report_json(const ScenarioReport& report, const std::string& path) {
  nlohmann::ordered_json j;
  j["scenario"] = report.name;
  j["h"] = report.h;
  j["quad_points_per_unit"] = report.quad_points;
  j["pass"] = report.pass();
  j["runtime_seconds"] = report.runtime_seconds;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["category"] = c.category;
    cj["kind"] = c.kind;
    cj["observed"] = std::isfinite(c.observed) ? nlohmann::ordered_json(c.observed)
                                               : nlohmann::ordered_json("inf");
    cj["expected"] = c.expected;
    cj["tol"] = c.tol;
    cj["pass"] = c.pass;
    cj["provenance"] = c.provenance;
    j["checks"].push_back(cj);
  }
  j["notes"] = report.notes;
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
}

inline void write_artifacts(const BuiltScenario& b, const Solution& sol,
                            const std::vector<std::pair<double, double>>& pairs,
                            const ScenarioReport& report, const std::string& out_dir) {
  if (out_dir.empty()) return;
  std::filesystem::create_directories(out_dir);
  const std::string base = out_dir + "/" + b.name;
  write_solution_csv(b.graph, sol, base + "_solution.csv");
  write_report_json(report, base + "_report.json");
  write_pairs_csv(pairs, base + "_pairs.csv");
}

inline double sup_error_against(const BuiltScenario& b, const Solution& sol) {
  double sup = 0.0;
  for (std::size_t v = 0; v < b.graph.vertex_count(); ++v) {
    const double exact = b.exact_u(b.graph.vertex(static_cast<VertexId>(v)).pos);
    const double got = sol.table.dist[v];
    if (std::isfinite(exact) && std::isfinite(got)) sup = std::max(sup, std::abs(got - exact));
  }
  return sup;
}

}  // namespace detail

/// interval_sqrt: the one-dimensional singular scenario. Closed form
/// u = 2(1 - sqrt|x|); optical length from the origin 2 sqrt|x|; Hoelder
/// exponent 1/2 at the origin; homogeneous dimension 1.
inline ScenarioReport run_interval_sqrt(const ScenarioParams& params) {
  const auto t0 = std::chrono::steady_clock::now();
  const double h = params.h > 0 ? params.h : 1e-3;
  const auto quad = make_quadrature(params);
  BuiltScenario b = build_interval_sqrt(h);
  ScenarioReport report;
  report.name = b.name;
  report.h = h;
  report.quad_points = quad.points_per_unit;

  DirichletProblem problem(b.graph, b.field, b.g);
  const Solution sol = solve_lax(problem, quad);

  report.add_le("sup|u - 2(1-sqrt|x|)|", "solve", detail::sup_error_against(b, sol),
                tolerances::interval_sup_err, "closed form from the one-dimensional control formula");
  const VertexId origin = b.graph.nearest_vertex(Point{0.0, 0.0, 0.0});
  report.add_eq("u(0)", "solve", sol.u(origin), 2.0, tolerances::interval_sup_err,
                "closed form: two sided integral of 1/sqrt(s) over [0,1]");
  report.add_le("lax_inequality_violation", "solve", sol.diag.lax_max_violation, kFpNoiseTol,
                "value function is 1-Lipschitz in the optical metric");
  report.add_bool("compatibility_ok", "solve", sol.diag.compatibility_ok,
                  "g = 0 satisfies the boundary compatibility condition");

  // Monge property at sampled interior vertices.
  const auto weights = edge_weights(b.graph, b.field, quad);
  const auto radii =
      params.radii.empty() ? default_radii(pseudo_diameter(b.graph, weights)) : params.radii;
  const auto sample = detail::interior_sample(b.graph, 200);
  const auto monge = verify_monge(sol.table.dist, problem, sample, radii, params.monge_tol,
                                  false, sol.sigma_g, quad);
  report.add_ge("monge_subslope_pass_fraction", "verify", monge.pass_fraction(),
                tolerances::monge_pass_fraction, "subslope extrapolates to 1 for the control solution");
  report.add_bool("semicontinuity", "verify", monge.all_semicontinuous(),
                  "superslope never exceeds subslope for the control solution");

  // Regularity: exponent and constant of L_f(x, 0) ~ 2 sqrt d, and Q ~ 1.
  const auto pairs = distance_pairs(b.graph, b.field, origin, quad);
  const auto fit = fit_holder(pairs);
  report.add_eq("holder_exponent", "regularity", fit.exponent, 0.5,
                tolerances::holder_exponent_tol, "L_f(x,0) = 2 sqrt|x| closed form");
  report.add_eq("holder_constant", "regularity", fit.constant, 2.0,
                tolerances::holder_constant_tol, "L_f(x,0) = 2 sqrt|x| closed form");
  const std::vector<double> ball_radii{0.02, 0.04, 0.08, 0.12, 0.16, 0.24};
  const auto q = estimate_Q(b.graph, ball_radii, 8, params.seed);
  report.add_eq("homogeneous_dimension", "regularity", q.Q, 1.0, tolerances::q_interval_tol,
                "length measure on an interval");

  report.notes.push_back("u-pairs near the origin fit the same exponent as L_f by the closed form");
  report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  detail::write_artifacts(b, sol, pairs, report, params.out_dir);
  return report;
}

struct ConvergenceRow {
  double parameter;  // h or truncation level M
  double sup_error;
};

/// Mesh sweep: sup-norm error of u against the closed form per grid pitch.
inline std::vector<ConvergenceRow> interval_sqrt_h_sweep(const std::vector<double>& hs,
                                                         const Quadrature& quad) {
  std::vector<ConvergenceRow> rows;
  for (double h : hs) {
    BuiltScenario b = build_interval_sqrt(h);
    DirichletProblem problem(b.graph, b.field, b.g);
    const Solution sol = solve_lax(problem, quad);
    rows.push_back({h, detail::sup_error_against(b, sol)});
  }
  return rows;
}

/// Truncation sweep at fixed h: sup|u_M - u| per truncation level M.
inline std::vector<ConvergenceRow> interval_sqrt_truncation_sweep(double h,
                                                                  const std::vector<double>& Ms,
                                                                  const Quadrature& quad) {
  BuiltScenario b = build_interval_sqrt(h);
  DirichletProblem problem(b.graph, b.field, b.g);
  const Solution sol = solve_lax(problem, quad);
  std::vector<ConvergenceRow> rows;
  for (double M : Ms) {
    const auto table = truncated_solve(b.graph, b.field, M, problem.boundary(), b.g, quad);
    double sup = 0.0;
    for (std::size_t v = 0; v < table.dist.size(); ++v)
      if (std::isfinite(table.dist[v]) && std::isfinite(sol.table.dist[v]))
        sup = std::max(sup, std::abs(table.dist[v] - sol.table.dist[v]));
    rows.push_back({M, sup});
  }
  return rows;
}

/// comb: optical lengths along the teeth are exact rationals; the topology
/// modulus stays bounded away from zero; the solution is discontinuous in
/// d at the tip but Lipschitz in L_f.
inline ScenarioReport run_comb(const ScenarioParams& params) {
  const auto t0 = std::chrono::steady_clock::now();
  const int teeth = params.h > 0 ? std::max(2, static_cast<int>(std::lround(1.0 / params.h))) : 50;
  const auto quad = make_quadrature(params);
  BuiltScenario b = build_comb(teeth);
  ScenarioReport report;
  report.name = b.name;
  report.h = 1.0 / teeth;
  report.quad_points = quad.points_per_unit;

  const auto weights = edge_weights(b.graph, b.field, quad);
  const auto from_O = optical_from_sources(b.graph, weights, {comb_O()}, {}, quad);
  double worst_tooth = 0.0;
  for (int j = 2; j <= teeth; ++j)
    worst_tooth = std::max(worst_tooth,
                           std::abs(from_O.at(comb_Q(teeth, j)) - (1.0 + 1.0 / j)));
  report.add_le("max_j |L_f(O,Q_j) - (1+1/j)|", "solve", worst_tooth, tolerances::comb_exact,
                "optimal path descends the tooth then follows the spine");

  DirichletProblem problem(b.graph, b.field, b.g);
  const Solution sol = solve_lax(problem, quad);
  report.add_eq("u(O)", "solve", sol.u(comb_O()), 2.0, tolerances::comb_exact,
                "direct evaluation of the control formula at the tip");
  double worst_u = 0.0;
  for (int j = 2; j <= teeth; ++j)
    worst_u = std::max(worst_u, std::abs(sol.u(comb_Q(teeth, j)) - (3.0 - 1.0 / j)));
  report.add_le("max_j |u(Q_j) - (3-1/j)|", "solve", worst_u, tolerances::comb_exact,
                "direct evaluation of the control formula on the teeth");

  std::vector<double> r_grid;
  for (int j : {2, 5, 10, teeth}) r_grid.push_back(2.0 / j);
  const auto topo = topology_modulus(b.graph, b.field, r_grid, quad);
  double min_modulus = inf();
  for (const auto& [r, m] : topo.modulus) min_modulus = std::min(min_modulus, m);
  report.add_ge("topology_modulus_min", "solve", min_modulus, 1.0,
                "pairs (O, Q_j) are d-close but optically separated");
  report.notes.push_back(
      "the topology modulus does not vanish: the solution is discontinuous in d at the tip "
      "while staying Lipschitz in the optical metric");

  const auto radii = params.radii.empty() ? comb_monge_radii() : params.radii;
  const auto sample = detail::interior_sample(b.graph, 200);
  const auto monge =
      verify_monge(sol.table.dist, problem, sample, radii, params.monge_tol, false, sol.sigma_g, quad);
  report.add_ge("monge_subslope_pass_fraction", "verify", monge.pass_fraction(),
                tolerances::monge_pass_fraction, "subslope extrapolates to 1 for the control solution");
  report.add_bool("semicontinuity", "verify", monge.all_semicontinuous(),
                  "superslope never exceeds subslope for the control solution");

  const std::vector<double> ball_radii{0.05, 0.1, 0.2, 0.3, 0.45, 0.6};
  const auto q = estimate_Q(b.graph, ball_radii, 8, params.seed);
  report.add_ge("homogeneous_dimension_lower", "regularity", q.Q, 1.0 - tolerances::q_interval_tol,
                "ball growth on the comb sits between line and plane");
  report.add_le("homogeneous_dimension_upper", "regularity", q.Q, 2.0 + tolerances::q_interval_tol,
                "ball growth on the comb sits between line and plane");
  if (q.residual_flag)
    report.notes.push_back("homogeneous-dimension fit carries a residual flag: the comb is not "
                           "Ahlfors regular");

  report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto pairs = distance_pairs(b.graph, b.field, comb_O(), quad);
  detail::write_artifacts(b, sol, pairs, report, params.out_dir);
  return report;
}

/// circle: one boundary point; the solution follows theta/pi on the upper
/// arc and log(pi/(pi+theta)) below, diverging toward theta = -pi.
inline ScenarioReport run_circle(const ScenarioParams& params) {
  const auto t0 = std::chrono::steady_clock::now();
  const int n = params.h > 0 ? std::max(8, 2 * static_cast<int>(std::lround(M_PI / params.h))) : 640;
  const auto quad = make_quadrature(params);
  BuiltScenario b = build_circle(n);
  ScenarioReport report;
  report.name = b.name;
  report.h = 2.0 * M_PI / n;
  report.quad_points = quad.points_per_unit;

  DirichletProblem problem(b.graph, b.field, b.g);
  const Solution sol = solve_lax(problem, quad);

  double sup_upper = 0.0, sup_lower = 0.0;
  double max_u = 0.0;
  for (std::size_t v = 0; v < b.graph.vertex_count(); ++v) {
    const Point& p = b.graph.vertex(static_cast<VertexId>(v)).pos;
    const double theta = std::atan2(p[1], p[0]);
    const double got = sol.table.dist[v];
    if (std::isfinite(got)) max_u = std::max(max_u, got);
    const double exact = b.exact_u(p);
    if (theta >= 0.0)
      sup_upper = std::max(sup_upper, std::abs(got - exact));
    else if (theta >= -M_PI + tolerances::circle_collar && std::isfinite(got))
      sup_lower = std::max(sup_lower, std::abs(got - exact));
  }
  report.add_le("sup|u - theta/pi| (upper arc)", "solve", sup_upper, tolerances::circle_sup_err,
                "unit-speed arc at constant cost 1/pi");
  report.add_le("sup|u - log(pi/(pi+theta))| (lower arc, collar excluded)", "solve", sup_lower,
                tolerances::circle_sup_err, "antiderivative of 1/(theta+pi) along the arc");
  report.add_ge("divergence_near_-pi", "solve", max_u, 2.0,
                "u grows without bound approaching the singular point");
  report.notes.push_back(
      "u diverges toward theta = -pi (collar excluded from the oracle); a second, unbounded "
      "solution with the opposite sign of the log branch exists in the continuum, so uniqueness "
      "holds only among bounded solutions - documented, not testable on a finite graph");

  report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto pairs = distance_pairs(b.graph, b.field, b.g.begin()->first, quad);
  detail::write_artifacts(b, sol, pairs, report, params.out_dir);
  return report;
}

/// interval_loss: incompatible data g(0)=0, g(1)=2 lose the right boundary;
/// the effective boundary is {0} and u(x) = x solves the reduced problem,
/// including the Monge condition at the lost endpoint.
inline ScenarioReport run_interval_loss(const ScenarioParams& params) {
  const auto t0 = std::chrono::steady_clock::now();
  const double h = params.h > 0 ? params.h : 0.01;
  const auto quad = make_quadrature(params);
  BuiltScenario b = build_interval_loss(h);
  ScenarioReport report;
  report.name = b.name;
  report.h = h;
  report.quad_points = quad.points_per_unit;

  DirichletProblem problem(b.graph, b.field, b.g);
  const Solution sol = solve_lax(problem, quad);
  const VertexId left = b.graph.nearest_vertex(Point{0.0, 0.0, 0.0});
  const VertexId right = b.graph.nearest_vertex(Point{1.0, 0.0, 0.0});

  report.add_le("sup|u - x|", "solve", detail::sup_error_against(b, sol), tolerances::loss_exact,
                "distance to the kept boundary point");
  const bool sigma_is_left = sol.sigma_g.size() == 1 && sol.sigma_g[0] == left;
  report.add_bool("sigma_g == {0}", "solve", sigma_is_left,
                  "datum at 1 exceeds the optical distance from 0; it is lost");
  const auto compat = check_compatibility(problem, quad);
  bool found = false;
  double excess = 0.0;
  for (const auto& v : compat.violations)
    if (v.x == right && v.y == left) {
      found = true;
      excess = v.excess;
    }
  report.add_bool("compatibility_violation_at(1,0)", "solve", found && !compat.ok,
                  "g(1)-g(0) = 2 exceeds L_f(1,0) = 1");
  report.add_eq("violation_size", "solve", excess, 1.0, tolerances::loss_exact,
                "2 - 0 - 1 = 1 by the constant-cost edge chain");

  // Reduced-problem Monge check: interior plus the lost-boundary vertex.
  auto sample = detail::interior_sample(b.graph, 200);
  sample.push_back(right);
  const auto weights = edge_weights(b.graph, b.field, quad);
  const auto radii =
      params.radii.empty() ? default_radii(pseudo_diameter(b.graph, weights)) : params.radii;
  const auto monge = verify_monge(sol.table.dist, problem, sample, radii, params.monge_tol, true,
                                  sol.sigma_g, quad);
  report.add_eq("monge_subslope_pass_fraction(reduced)", "verify", monge.pass_fraction(), 1.0,
                1.0 - tolerances::monge_pass_fraction,
                "|subslope|(x) = 1 holds up to and including the lost endpoint");

  report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto pairs = distance_pairs(b.graph, b.field, left, quad);
  detail::write_artifacts(b, sol, pairs, report, params.out_dir);
  return report;
}

/// interval_noncurve: f = 1/|x| admits no admissible curve out of the
/// origin; every optical distance from it is infinite.
inline ScenarioReport run_interval_noncurve(const ScenarioParams& params) {
  const auto t0 = std::chrono::steady_clock::now();
  const double h = params.h > 0 ? params.h : 0.01;
  const auto quad = make_quadrature(params);
  BuiltScenario b = build_interval_noncurve(h);
  ScenarioReport report;
  report.name = b.name;
  report.h = h;
  report.quad_points = quad.points_per_unit;

  const VertexId origin = b.g.begin()->first;
  const auto table = optical_from_sources(b.graph, b.field, {origin}, {}, quad);
  bool all_infinite = true;
  for (std::size_t v = 0; v < table.dist.size(); ++v)
    if (static_cast<VertexId>(v) != origin && std::isfinite(table.dist[v])) all_infinite = false;
  report.add_bool("L_f(x,0) = inf for all x != 0", "solve", all_infinite,
                  "the running cost is not integrable along any curve reaching the origin");
  report.add_eq("L_f(0,0)", "solve", table.at(origin), 0.0, 0.0, "a point is optically at distance 0 from itself");
  report.notes.push_back("the admissible-curve class out of the origin is empty; the vertex is "
                         "optically isolated");

  report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!params.out_dir.empty()) {
    std::filesystem::create_directories(params.out_dir);
    write_table_csv(b.graph, table, params.out_dir + "/" + b.name + "_solution.csv");
    detail::write_report_json(report, params.out_dir + "/" + b.name + "_report.json");
  }
  return report;
}

/// punctured_disk: admissible curves exist for every pair even though f is
/// not square-integrable; the optical ball around the origin is pinched
/// along the embedded segment.
inline ScenarioReport run_punctured_disk(const ScenarioParams& params) {
  const auto t0 = std::chrono::steady_clock::now();
  const double h = params.h > 0 ? params.h : 0.01;
  const auto quad = make_quadrature(params);
  BuiltScenario b = build_punctured_disk(h);
  ScenarioReport report;
  report.name = b.name;
  report.h = h;
  report.quad_points = quad.points_per_unit;

  DirichletProblem problem(b.graph, b.field, b.g);
  const Solution sol = solve_lax(problem, quad);

  const VertexId right = b.graph.nearest_vertex(Point{1.0, 0.0, 0.0});
  report.add_eq("L_f(O,(1,0))", "solve", sol.u(right), 2.0, tolerances::disk_value_tol,
                "integral of 1/sqrt(x1) along the embedded segment; off it the cost dominates");

  double min_axis = inf();
  for (int j = 1; j <= 20; ++j) {
    const VertexId z = b.graph.nearest_vertex(Point{0.0, 1.0 / j, 0.0});
    min_axis = std::min(min_axis, sol.u(z));
  }
  report.add_ge("min_j L_f(O,(0,1/j))", "solve", min_axis, tolerances::disk_lower_bound,
                "cost at least 1/2 inside the ball B_{|z|}(z) where f >= 1/(2|z|)");

  double max_val = 0.0;
  bool any_infinite = false;
  for (std::size_t v = 0; v < b.graph.vertex_count(); ++v) {
    if (!std::isfinite(sol.table.dist[v])) {
      any_infinite = true;
      continue;
    }
    max_val = std::max(max_val, sol.table.dist[v]);
  }
  report.add_le("max_z L_f(O,z)", "solve", max_val, M_PI + 2.0 + tolerances::disk_value_tol,
                "arc to the positive axis then the segment costs at most pi + 2");
  report.add_bool("all_finite", "solve", !any_infinite,
                  "every point connects to the origin through the segment");

  report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto pairs = distance_pairs(b.graph, b.field, b.g.begin()->first, quad);
  detail::write_artifacts(b, sol, pairs, report, params.out_dir);
  return report;
}

/// blocked_square: a declared null-set wall with one gap; transversal
/// distances detour, orderings hold, and the maximal solution is the
/// maximal weak subsolution.
inline ScenarioReport run_blocked_square(const ScenarioParams& params) {
  const auto t0 = std::chrono::steady_clock::now();
  const double h = params.h > 0 ? params.h : 0.1;
  const auto quad = make_quadrature(params);
  BuiltScenario b = build_blocked_square(h);
  ScenarioReport report;
  report.name = b.name;
  report.h = h;
  report.quad_points = quad.points_per_unit;

  DirichletProblem problem(b.graph, b.field, b.g);
  const Solution plain = solve_lax(problem, quad);
  const Solution maximal = solve_lax_transversal(problem, b.family, quad, params.workers);
  const Solution trivial = solve_lax_transversal(problem, {}, quad, params.workers);

  double max_drop = 0.0;
  for (std::size_t v = 0; v < b.graph.vertex_count(); ++v)
    max_drop = std::max(max_drop, plain.table.dist[v] - maximal.table.dist[v]);
  report.add_le("max(u - u~)", "transversal", max_drop, kFpNoiseTol,
                "transversal curves are a subclass, so distances only grow");
  // Far corner diagonally opposite the gap: the detour through the gap is
  // the only route, so the ordering is strict there.
  const VertexId far_corner = b.graph.nearest_vertex(Point{1.0, 0.0, 0.0});
  const double corner_gap = maximal.table.dist[static_cast<std::size_t>(far_corner)] -
                            plain.table.dist[static_cast<std::size_t>(far_corner)];
  report.add_ge("far-corner (u~ - u)", "transversal", corner_gap, tolerances::blocked_min_gap,
                "the wall forces a detour through the gap");
  bool bit_identical = trivial.table.dist == plain.table.dist;
  report.add_bool("empty_family_identity", "transversal", bit_identical,
                  "no marking, no change: the two solves share every arithmetic step");

  const auto sample = detail::interior_sample(b.graph, 200);
  const auto weights = edge_weights(b.graph, b.field, quad);
  const auto radii =
      params.radii.empty() ? default_radii(pseudo_diameter(b.graph, weights)) : params.radii;
  const auto monge = verify_transversal_monge(maximal.table.dist, problem, b.family, sample, radii,
                                              params.monge_tol, quad);
  report.add_ge("transversal_monge_pass_fraction", "transversal", monge.pass_fraction(),
                tolerances::monge_pass_fraction,
                "the maximal solution solves the blocked problem exactly");

  std::vector<WeakCandidate> candidates;
  {
    WeakCandidate down{"maximal_minus_1", maximal.table.dist};
    for (auto& v : down.values) v -= 1.0;
    WeakCandidate same{"maximal", maximal.table.dist};
    WeakCandidate up{"maximal_plus_0.1", maximal.table.dist};
    for (auto& v : up.values) v += 0.1;
    candidates = {down, same, up};
  }
  const auto weak = maximal_weak_check(maximal, problem, b.family, candidates, radii,
                                       params.monge_tol);
  report.add_bool("maximal_is_weak_subsolution", "transversal", weak.maximal_is_weak_subsolution,
                  "slope never exceeds f off the marking");
  bool members_below = true;
  bool up_rejected = false;
  for (const auto& row : weak.rows) {
    if (row.member && !row.below_maximal) members_below = false;
    if (row.candidate == "maximal_plus_0.1" && !row.member) up_rejected = true;
  }
  report.add_bool("weak_subsolutions_below_maximal", "transversal", members_below,
                  "every admitted weak subsolution stays below the maximal one");
  report.add_bool("boundary_violator_rejected", "transversal", up_rejected,
                  "candidates above g on the boundary are filtered out");

  double linf_gap = 0.0;
  for (std::size_t v = 0; v < b.graph.vertex_count(); ++v)
    linf_gap = std::max(linf_gap, maximal.table.dist[v] - plain.table.dist[v]);
  report.notes.push_back("max|u~ - u| = " + format_double(linf_gap) +
                         "; whether the gap closes in the continuum is left open, only reported");

  report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto pairs = distance_pairs(b.graph, b.field, b.g.begin()->first, quad);
  detail::write_artifacts(b, maximal, pairs, report, params.out_dir);
  return report;
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {
      "interval_sqrt", "comb", "circle", "interval_loss", "interval_noncurve",
      "punctured_disk", "blocked_square"};
  return names;
}

inline ScenarioReport run_scenario(const std::string& name, const ScenarioParams& params = {}) {
  if (name == "interval_sqrt") return run_interval_sqrt(params);
  if (name == "comb") return run_comb(params);
  if (name == "circle") return run_circle(params);
  if (name == "interval_loss") return run_interval_loss(params);
  if (name == "interval_noncurve") return run_interval_noncurve(params);
  if (name == "punctured_disk") return run_punctured_disk(params);
  if (name == "blocked_square") return run_blocked_square(params);
  throw UnknownScenario("unknown scenario '" + name + "'");
}

inline BuiltScenario build_scenario(const std::string& name, const ScenarioParams& params = {}) {
  const double h = params.h;
  if (name == "interval_sqrt") return build_interval_sqrt(h > 0 ? h : 1e-3);
  if (name == "comb") return build_comb(h > 0 ? std::max(2, static_cast<int>(std::lround(1.0 / h))) : 50);
  if (name == "circle") return build_circle(h > 0 ? std::max(8, 2 * static_cast<int>(std::lround(M_PI / h))) : 640);
  if (name == "interval_loss") return build_interval_loss(h > 0 ? h : 0.01);
  if (name == "interval_noncurve") return build_interval_noncurve(h > 0 ? h : 0.01);
  if (name == "punctured_disk") return build_punctured_disk(h > 0 ? h : 0.01);
  if (name == "blocked_square") return build_blocked_square(h > 0 ? h : 0.1);
  throw UnknownScenario("unknown scenario '" + name + "'");
}

// ---------------------------------------------------------------------------
// Scenario files
// ---------------------------------------------------------------------------

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& j, const char* key,
                                           const std::string& context) {
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(context + ": missing field \"" + key + "\"");
  return *it;
}

inline WeightField field_from_json(const nlohmann::json& jf) {
  const std::string kind = require_field(jf, "kind", "f").get<std::string>();
  const double alpha = jf.value("alpha", 1.0);
  Integrability tag = Integrability::None;
  double p = 0.0, bound = 0.0;
  if (jf.contains("tag")) {
    const std::string t = jf["tag"].get<std::string>();
    if (t == "Lp") {
      tag = Integrability::Lp;
      p = jf.value("p", 0.0);
    } else if (t == "Linf") {
      tag = Integrability::Linf;
      bound = jf.value("bound", 0.0);
    } else if (t != "none") {
      throw ParseError("f: unknown integrability tag \"" + t + "\"");
    }
  }
  if (kind == "builtin") {
    const std::string name = require_field(jf, "name", "f").get<std::string>();
    if (name == "one") return WeightField::constant(1.0);
    if (name == "constant") return WeightField::constant(require_field(jf, "c", "f").get<double>());
    if (name == "inv_sqrt_abs_x")
      return WeightField::pointwise(
          [](const Point& pt) {
            const double a = std::abs(pt[0]);
            return a > 0 ? 1.0 / std::sqrt(a) : inf();
          },
          alpha, tag, p, bound);
    if (name == "inv_abs_x")
      return WeightField::pointwise(
          [](const Point& pt) {
            const double a = std::abs(pt[0]);
            return a > 0 ? 1.0 / a : inf();
          },
          alpha, tag, p, bound);
    throw ParseError("f: unknown builtin \"" + name + "\"");
  }
  if (kind == "expression") {
    const std::string formula = require_field(jf, "formula", "f").get<std::string>();
    auto expr = std::make_shared<Expression>(Expression::parse(formula));
    return WeightField(
        [expr](const MetricGraph& g, EdgeId e, double s) {
          const Point pt = g.point_on_edge(e, s);
          return expr->eval({{"x", pt[0]}, {"y", pt[1]}, {"s", s}});
        },
        alpha, tag, p, bound);
  }
  throw ParseError("f: kind must be \"builtin\" or \"expression\", got \"" + kind + "\"");
}

inline DomainSpec domain_from_json(const nlohmann::json& jd) {
  DomainSpec dom;
  const std::string shape = require_field(jd, "shape", "grid.domain").get<std::string>();
  if (shape == "interval") {
    dom.shape = DomainSpec::Shape::Interval;
    dom.x0 = require_field(jd, "min", "grid.domain").get<double>();
    dom.x1 = require_field(jd, "max", "grid.domain").get<double>();
  } else if (shape == "rectangle") {
    dom.shape = DomainSpec::Shape::Rectangle;
    dom.x0 = require_field(jd, "xmin", "grid.domain").get<double>();
    dom.x1 = require_field(jd, "xmax", "grid.domain").get<double>();
    dom.y0 = require_field(jd, "ymin", "grid.domain").get<double>();
    dom.y1 = require_field(jd, "ymax", "grid.domain").get<double>();
  } else if (shape == "disk") {
    dom.shape = DomainSpec::Shape::Disk;
    const auto& c = require_field(jd, "center", "grid.domain");
    dom.cx = c.at(0).get<double>();
    dom.cy = c.at(1).get<double>();
    dom.radius = require_field(jd, "radius", "grid.domain").get<double>();
  } else {
    throw ParseError("grid.domain: unknown shape \"" + shape + "\"");
  }
  return dom;
}

}  // namespace detail

/// Loads the structured scenario description format. Field names are part of
/// the contract: graph.vertices[].{id,xy,boundary}, graph.edges[].{u,v,
/// length,measure}, or graph.grid.{domain,h,stencil}; f.{kind,...};
/// g[].{vertex,value}; null_sets[].{name,blocked_edges,passable_vertices}.
inline BuiltScenario load_scenario_json(const nlohmann::json& j) {
  BuiltScenario b;
  b.name = j.value("name", "scenario");
  const auto& jg = detail::require_field(j, "graph", b.name);
  if (jg.contains("grid")) {
    const auto& grid = jg["grid"];
    const auto dom = detail::domain_from_json(detail::require_field(grid, "domain", "grid"));
    const double h = detail::require_field(grid, "h", "grid").get<double>();
    const int stencil = grid.value("stencil", 8);
    b.graph = grid_domain(dom, h, stencil, b.name);
  } else {
    GraphSpec spec;
    spec.name = b.name;
    const auto& jv = detail::require_field(jg, "vertices", "graph");
    const auto& je = detail::require_field(jg, "edges", "graph");
    for (std::size_t i = 0; i < jv.size(); ++i) {
      const auto& v = jv[i];
      GraphSpec::V gv;
      gv.id = detail::require_field(v, "id", "vertex " + std::to_string(i)).get<VertexId>();
      if (v.contains("xy")) {
        const auto& xy = v["xy"];
        for (std::size_t k = 0; k < std::min<std::size_t>(3, xy.size()); ++k)
          gv.pos[k] = xy[k].get<double>();
        spec.ambient_dimension = std::max<int>(spec.ambient_dimension, static_cast<int>(xy.size()));
      }
      gv.boundary = v.value("boundary", false);
      spec.vertices.push_back(gv);
    }
    for (std::size_t i = 0; i < je.size(); ++i) {
      const auto& e = je[i];
      const std::string ctx = "edge " + std::to_string(i);
      GraphSpec::E ge;
      ge.u = detail::require_field(e, "u", ctx).get<VertexId>();
      ge.v = detail::require_field(e, "v", ctx).get<VertexId>();
      ge.length = detail::require_field(e, "length", ctx).get<double>();
      ge.measure = e.value("measure", ge.length);
      spec.edges.push_back(ge);
    }
    b.graph = build_graph(spec);
  }
  b.field = detail::field_from_json(detail::require_field(j, "f", b.name));
  if (j.contains("g")) {
    for (std::size_t i = 0; i < j["g"].size(); ++i) {
      const auto& item = j["g"][i];
      const std::string ctx = "g[" + std::to_string(i) + "]";
      const VertexId v = detail::require_field(item, "vertex", ctx).get<VertexId>();
      b.g[v] = detail::require_field(item, "value", ctx).get<double>();
    }
  }
  if (j.contains("null_sets")) {
    for (const auto& jm : j["null_sets"]) {
      NullSetMarking m;
      m.name = jm.value("name", "marking");
      if (jm.contains("blocked_edges"))
        for (const auto& e : jm["blocked_edges"]) m.blocked_edges.insert(e.get<EdgeId>());
      if (jm.contains("passable_vertices"))
        for (const auto& v : jm["passable_vertices"]) m.passable_vertices.insert(v.get<VertexId>());
      m.validate(b.graph);
      b.family.push_back(std::move(m));
    }
  }
  return b;
}

inline BuiltScenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scenario file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  try {
    return load_scenario_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

/// Generic pipeline for a user-supplied scenario: solve, verify the standing
/// invariants, emit artifacts. No closed-form oracle is available, so the
/// checks are the structural ones.
inline ScenarioReport run_loaded_scenario(const BuiltScenario& b, const ScenarioParams& params) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto quad = make_quadrature(params);
  ScenarioReport report;
  report.name = b.name;
  report.quad_points = quad.points_per_unit;

  if (b.g.empty()) throw EmptyBoundary("scenario '" + b.name + "' supplies no Dirichlet data");
  DirichletProblem problem(b.graph, b.field, b.g);
  const Solution sol = b.family.empty() ? solve_lax(problem, quad)
                                        : solve_lax_transversal(problem, b.family, quad,
                                                                params.workers);
  report.add_le("lax_inequality_violation", "solve", sol.diag.lax_max_violation, kFpNoiseTol,
                "value function is 1-Lipschitz in the optical metric");
  report.add_bool("sigma_g_nonempty", "solve", !sol.sigma_g.empty(),
                  "the datum is attained at its boundary minimizers");
  const auto axioms = check_metric_axioms(b.graph, b.field, 100, params.seed, quad);
  report.add_bool("metric_axioms", "solve", axioms.ok(), "label-setting output is a graph metric");

  report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto pairs = distance_pairs(b.graph, b.field, b.g.begin()->first, quad);
  detail::write_artifacts(b, sol, pairs, report, params.out_dir);
  return report;
}

}  // namespace eikonal
