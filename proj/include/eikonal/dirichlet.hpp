#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "eikonal/optical.hpp"

namespace eikonal {

/// Dirichlet data: a nonempty set of boundary vertices with bounded values g.
struct DirichletProblem {
  const MetricGraph* graph = nullptr;
  WeightField f;
  std::map<VertexId, double> g;

  DirichletProblem(const MetricGraph& gr, WeightField field, std::map<VertexId, double> data)
      : graph(&gr), f(std::move(field)), g(std::move(data)) {
    if (g.empty()) throw EmptyBoundary("Dirichlet problem requires a nonempty boundary set");
    for (const auto& [v, val] : g) {
      if (v < 0 || static_cast<std::size_t>(v) >= gr.vertex_count())
        throw ParseError("boundary vertex " + std::to_string(v) + " out of range");
      if (!gr.vertex(v).boundary)
        throw ParseError("vertex " + std::to_string(v) + " carries Dirichlet data but no boundary flag");
      if (!std::isfinite(val))
        throw ParseError("Dirichlet datum at vertex " + std::to_string(v) + " must be finite");
    }
    if (g.size() >= gr.vertex_count())
      throw ParseError("boundary set must be a proper subset of the vertices");
  }

  std::vector<VertexId> boundary() const {
    std::vector<VertexId> out;
    out.reserve(g.size());
    for (const auto& [v, _] : g) out.push_back(v);
    return out;
  }
};

inline const MetricGraph& g_of(const DirichletProblem& p) { return *p.graph; }

struct CompatibilityViolation {
  VertexId x, y;
  double excess;  // g(x) - g(y) - L_f(x, y)
};

struct CompatibilityReport {
  bool ok = true;
  double tolerance = 1e-9;
  std::vector<CompatibilityViolation> violations;
};

/// Checks g(x) <= L_f(x,y) + g(y) over boundary pairs. Exactly when this
/// holds the Dirichlet data are fully attained; the largest excesses are the
/// interesting output when it fails.
inline CompatibilityReport check_compatibility(const DirichletProblem& p,
                                               const Quadrature& quad = {},
                                               double tol = 1e-9) {
  CompatibilityReport report;
  report.tolerance = tol;
  const auto weights = edge_weights(g_of(p), p.f, quad);
  const auto bd = p.boundary();
  for (VertexId y : bd) {
    const auto lf = dijkstra(g_of(p), weights, {{y, 0.0}}).dist;
    const double gy = p.g.at(y);
    for (VertexId x : bd) {
      if (x == y) continue;
      const double excess = p.g.at(x) - gy - lf[static_cast<std::size_t>(x)];
      if (excess > tol) {
        report.ok = false;
        report.violations.push_back({x, y, excess});
      }
    }
  }
  std::sort(report.violations.begin(), report.violations.end(),
            [](const auto& a, const auto& b) { return a.excess > b.excess; });
  return report;
}

struct SolutionDiagnostics {
  bool compatibility_ok = true;
  double max_compatibility_excess = 0.0;
  /// max over checked pairs of u(x) - u(y) - L_f(x,y); edge-wise pairs are
  /// always checked, random pairs when a sample size is given.
  double lax_max_violation = 0.0;
  double sigma_tolerance = 1e-9;
  std::string boundary_note;
};

/// Solution of the Dirichlet problem via the optimal-control formula:
/// u(x) = min over boundary y of (g(y) + L_f(x,y)).
struct Solution {
  OpticalTable table;             // table.dist is u
  std::vector<VertexId> sigma_g;  // effective boundary: u = g (within tolerance)
  SolutionDiagnostics diag;

  double u(VertexId v) const { return table.at(v); }
};

/// Sigma_g = { y in boundary : g(y) <= u(y) + tol }; since u <= g on the
/// boundary always, this is where the datum is attained.
inline std::vector<VertexId> effective_boundary(const DirichletProblem& p, const Solution& sol,
                                                double tol) {
  std::vector<VertexId> out;
  for (const auto& [y, gy] : p.g)
    if (gy <= sol.table.at(y) + tol) out.push_back(y);
  return out;
}

/// Default Sigma_g tolerance: exact-arithmetic slack on graphs whose f is
/// edge-wise constant would do, but weights generally come from quadrature;
/// 10x the quadrature relative tolerance on the local scale covers both.
inline double default_sigma_tolerance(const Quadrature& quad) {
  return std::max(1e-9, 10.0 * quad.rel_tol);
}

inline Solution solve_lax(const DirichletProblem& p, const Quadrature& quad = {},
                          int lax_pair_sample = 0, unsigned seed = 0) {
  const MetricGraph& g = g_of(p);
  const auto weights = edge_weights(g, p.f, quad);
  Solution sol;
  sol.table = optical_from_sources(g, weights, p.boundary(), p.g, quad);

  sol.diag.sigma_tolerance = default_sigma_tolerance(quad);
  sol.sigma_g = effective_boundary(p, sol, sol.diag.sigma_tolerance);

  const auto compat = check_compatibility(p, quad);
  sol.diag.compatibility_ok = compat.ok;
  for (const auto& v : compat.violations)
    sol.diag.max_compatibility_excess = std::max(sol.diag.max_compatibility_excess, v.excess);
  if (!compat.ok)
    sol.diag.boundary_note =
        "compatibility fails: data are lost outside Sigma_g; the reduced problem on the "
        "effective boundary is solved instead";

  // Lax inequality u(x) <= u(y) + L_f(x,y): edge-wise everywhere, plus a
  // random pair sample when requested.
  double viol = 0.0;
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    const Edge& e = g.edge(static_cast<EdgeId>(k));
    const double w = weights[k];
    if (!std::isfinite(w)) continue;
    const double a = sol.table.at(e.u), b = sol.table.at(e.v);
    if (std::isfinite(a) && std::isfinite(b)) viol = std::max(viol, std::abs(a - b) - w);
  }
  if (lax_pair_sample > 0) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(g.vertex_count() - 1));
    for (int i = 0; i < lax_pair_sample; ++i) {
      const VertexId x = pick(rng);
      const auto lf = dijkstra(g, weights, {{x, 0.0}}).dist;
      for (std::size_t y = 0; y < g.vertex_count(); ++y) {
        const double l = lf[y];
        const double ux = sol.table.at(x), uy = sol.table.dist[y];
        if (std::isfinite(l) && std::isfinite(ux) && std::isfinite(uy))
          viol = std::max(viol, ux - uy - l);
      }
    }
  }
  sol.diag.lax_max_violation = viol;
  return sol;
}

// ---------------------------------------------------------------------------
// Boundary attainment modulus
// ---------------------------------------------------------------------------

/// delta -> sup{ |u(x) - g(y)| : y in Sigma_g, d_G(x, y) <= delta }.
/// Reported, never enforced: scenarios where the collar condition fails
/// still produce a solution, with this curve staying away from zero.
inline std::map<double, double> boundary_modulus(const DirichletProblem& p, const Solution& sol,
                                                 const std::vector<double>& delta_grid) {
  if (sol.sigma_g.empty())
    throw EmptyEffectiveBoundary("boundary_modulus requires a nonempty effective boundary");
  const MetricGraph& g = g_of(p);
  std::vector<double> ds = delta_grid;
  std::sort(ds.begin(), ds.end());
  std::map<double, double> out;
  for (double d : ds) out[d] = 0.0;
  const double dmax = ds.back();
  const auto lengths = edge_lengths(g);
  for (VertexId y : sol.sigma_g) {
    const auto dg = dijkstra(g, lengths, {{y, 0.0}}, dmax).dist;
    const double gy = p.g.at(y);
    for (std::size_t x = 0; x < g.vertex_count(); ++x) {
      if (!(dg[x] <= dmax)) continue;
      const double gap = std::abs(sol.table.dist[x] - gy);
      for (double d : ds)
        if (dg[x] <= d) out[d] = std::max(out[d], gap);
    }
  }
  return out;
}

inline void write_solution_csv(const MetricGraph& g, const Solution& sol, const std::string& path) {
  std::vector<char> in_sigma(g.vertex_count(), 0);
  for (VertexId v : sol.sigma_g) in_sigma[static_cast<std::size_t>(v)] = 1;
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << "vertex_id,x,y,u,in_sigma_g\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto& vx = g.vertex(static_cast<VertexId>(v));
    out << v << ',' << format_double(vx.pos[0]) << ',' << format_double(vx.pos[1]) << ','
        << format_double(sol.table.dist[v]) << ',' << static_cast<int>(in_sigma[v]) << '\n';
  }
}

}  // namespace eikonal
