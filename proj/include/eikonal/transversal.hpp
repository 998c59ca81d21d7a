#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "eikonal/slopes.hpp"

namespace eikonal {

/// Graph-level stand-in for a null set N: admissible curves transversal to N
/// may spend zero length inside it, so blocked edges can be touched only at
/// their endpoints (+inf traversal cost), while vertices inside N stay
/// crossable (a vertex crossing has zero one-dimensional measure).
struct NullSetMarking {
  std::string name;
  std::set<EdgeId> blocked_edges;
  std::set<VertexId> passable_vertices;

  bool empty() const { return blocked_edges.empty(); }

  void validate(const MetricGraph& g) const {
    for (EdgeId e : blocked_edges)
      if (e < 0 || static_cast<std::size_t>(e) >= g.edge_count())
        throw ParseError("null-set marking '" + name + "' blocks unknown edge " + std::to_string(e));
    for (VertexId v : passable_vertices)
      if (v < 0 || static_cast<std::size_t>(v) >= g.vertex_count())
        throw ParseError("null-set marking '" + name + "' lists unknown vertex " + std::to_string(v));
  }

  /// Vertices that sit on the marking (endpoints of blocked edges or listed
  /// passable points); weak-solution checks are evaluated off this set.
  std::set<VertexId> touched_vertices(const MetricGraph& g) const {
    std::set<VertexId> out = passable_vertices;
    for (EdgeId e : blocked_edges) {
      out.insert(g.edge(e).u);
      out.insert(g.edge(e).v);
    }
    return out;
  }
};

inline std::vector<double> blocked_weights(const std::vector<double>& weights,
                                           const NullSetMarking& marking) {
  std::vector<double> out = weights;
  for (EdgeId e : marking.blocked_edges) out[static_cast<std::size_t>(e)] = inf();
  return out;
}

/// L_f^N table: optical distances over curves transversal to the marking.
inline OpticalTable optical_transversal(const MetricGraph& g, const WeightField& f,
                                        const NullSetMarking& marking,
                                        const std::vector<VertexId>& sources,
                                        const std::map<VertexId, double>& initial = {},
                                        const Quadrature& quad = {}) {
  marking.validate(g);
  const auto weights = blocked_weights(edge_weights(g, f, quad), marking);
  return optical_from_sources(g, weights, sources, initial, quad);
}

/// Maximal optical length over the finite family (the empty marking is
/// always included): a lower bound for the supremum over all null sets.
/// Returns the value and the name of the marking attaining it ("" for the
/// plain optical length).
inline std::pair<double, std::string> maximal_optical(const MetricGraph& g, const WeightField& f,
                                                      const std::vector<NullSetMarking>& family,
                                                      VertexId x, VertexId y,
                                                      const Quadrature& quad = {}) {
  const auto base = edge_weights(g, f, quad);
  double best = dijkstra(g, base, {{x, 0.0}}, inf(), y).dist[static_cast<std::size_t>(y)];
  std::string argmax;
  for (const auto& m : family) {
    m.validate(g);
    const double v = dijkstra(g, blocked_weights(base, m), {{x, 0.0}}, inf(), y)
                         .dist[static_cast<std::size_t>(y)];
    if (v > best) {
      best = v;
      argmax = m.name;
    }
  }
  return {best, argmax};
}

/// Per-pair maximal distances from a single source over the family.
inline std::vector<double> maximal_distances(const MetricGraph& g,
                                             const std::vector<double>& base_weights,
                                             const std::vector<NullSetMarking>& family,
                                             const std::vector<std::pair<VertexId, double>>& sources,
                                             double radius_cap = std::numeric_limits<double>::infinity()) {
  std::vector<double> best = dijkstra(g, base_weights, sources, radius_cap).dist;
  for (const auto& m : family) {
    const auto d = dijkstra(g, blocked_weights(base_weights, m), sources, radius_cap).dist;
    for (std::size_t v = 0; v < best.size(); ++v) best[v] = std::max(best[v], d[v]);
  }
  return best;
}

/// Maximal solution over the marking family: vertexwise max of per-marking
/// multi-source solves (empty marking included), so u~ >= u always and
/// growing the family never decreases it. With one dominating marking this
/// coincides with the Lax formula built on the maximal optical length.
inline Solution solve_lax_transversal(const DirichletProblem& p,
                                      const std::vector<NullSetMarking>& family,
                                      const Quadrature& quad = {}, int workers = 1) {
  const MetricGraph& g = g_of(p);
  for (const auto& m : family) m.validate(g);
  const auto base = edge_weights(g, p.f, quad);
  const auto sources = p.boundary();

  Solution sol;
  sol.table = optical_from_sources(g, base, sources, p.g, quad);

  std::vector<std::vector<double>> per_marking(family.size());
  parallel_for(family.size(), workers, [&](std::size_t i) {
    per_marking[i] =
        optical_from_sources(g, blocked_weights(base, family[i]), sources, p.g, quad).dist;
  });
  for (const auto& dist : per_marking)
    for (std::size_t v = 0; v < dist.size(); ++v)
      if (dist[v] > sol.table.dist[v]) {
        sol.table.dist[v] = dist[v];
        sol.table.parent[v] = kNoVertex;  // witness trees differ per marking
        sol.table.parent_edge[v] = kNoEdge;
      }

  sol.diag.sigma_tolerance = default_sigma_tolerance(quad);
  sol.sigma_g = effective_boundary(p, sol, sol.diag.sigma_tolerance);
  const auto compat = check_compatibility(p, quad);
  sol.diag.compatibility_ok = compat.ok;
  for (const auto& v : compat.violations)
    sol.diag.max_compatibility_excess = std::max(sol.diag.max_compatibility_excess, v.excess);

  // Edge-wise Lax diagnostic against the per-edge max cost, valid because
  // the argmax marking at one endpoint bounds the step along any edge.
  std::vector<double> max_w = base;
  for (const auto& m : family)
    for (EdgeId e : m.blocked_edges) max_w[static_cast<std::size_t>(e)] = inf();
  double viol = 0.0;
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    if (!std::isfinite(max_w[k])) continue;
    const Edge& e = g.edge(static_cast<EdgeId>(k));
    const double a = sol.table.at(e.u), b = sol.table.at(e.v);
    if (std::isfinite(a) && std::isfinite(b)) viol = std::max(viol, std::abs(a - b) - max_w[k]);
  }
  sol.diag.lax_max_violation = viol;
  return sol;
}

/// Monge verification with difference quotients taken in the maximal optical
/// length over the family.
inline MongeReport verify_transversal_monge(const std::vector<double>& u,
                                            const DirichletProblem& p,
                                            const std::vector<NullSetMarking>& family,
                                            const std::vector<VertexId>& sample,
                                            const std::vector<double>& radii, double tol = 0.05,
                                            const Quadrature& quad = {}) {
  const MetricGraph& g = g_of(p);
  const auto base = edge_weights(g, p.f, quad);
  const auto rs = detail::sorted_decreasing(radii);
  MongeReport report;
  report.tol = tol;
  for (VertexId x : sample) {
    const auto dist = maximal_distances(g, base, family, {{x, 0.0}}, rs.front());
    MongeRow row;
    row.vertex = x;
    row.sub = detail::slope_curve(u, dist, x, SlopeMode::sub_f, rs, {}, false);
    row.super = detail::slope_curve(u, dist, x, SlopeMode::super_f, rs, {}, false);
    row.monge_pass =
        std::isfinite(row.sub.extrapolated) && std::abs(row.sub.extrapolated - 1.0) <= tol;
    row.semicont_pass = std::isfinite(row.sub.extrapolated) &&
                        std::isfinite(row.super.extrapolated) &&
                        row.super.extrapolated <= row.sub.extrapolated + tol;
    report.rows.push_back(std::move(row));
    ++report.checked;
    if (report.rows.back().monge_pass) ++report.monge_passed;
    if (report.rows.back().semicont_pass) ++report.semicont_passed;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Maximal weak subsolution harness
// ---------------------------------------------------------------------------

struct WeakCandidate {
  std::string name;
  std::vector<double> values;
};

struct MaximalWeakRow {
  std::string candidate;
  bool member = false;        // passed the weak-subsolution membership test
  bool below_maximal = false; // v <= u~ + tol (only meaningful for members)
  double max_excess = 0.0;
  std::string note;
};

struct MaximalWeakReport {
  std::vector<MaximalWeakRow> rows;
  bool maximal_is_weak_subsolution = false;
  bool pass = false;
};

/// (a) every supplied candidate that belongs to the weak-subsolution class
/// (v <= g on the boundary, slope_d <= f off each marking) stays below the
/// maximal solution; (b) the maximal solution itself passes the weak
/// subsolution test off the union of the markings. Requires L^inf data.
inline MaximalWeakReport maximal_weak_check(const Solution& maximal, const DirichletProblem& p,
                                            const std::vector<NullSetMarking>& family,
                                            const std::vector<WeakCandidate>& candidates,
                                            const std::vector<double>& radii, double tol = 0.05) {
  if (p.f.integrability() != Integrability::Linf)
    throw MissingLinfTag("maximal_weak_check requires an L^inf-tagged weight field");
  const MetricGraph& g = g_of(p);

  std::set<VertexId> union_touched;
  for (const auto& m : family) {
    const auto t = m.touched_vertices(g);
    union_touched.insert(t.begin(), t.end());
  }
  std::vector<VertexId> interior;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (!g.vertex(static_cast<VertexId>(v)).boundary) interior.push_back(static_cast<VertexId>(v));

  MaximalWeakReport report;
  for (const auto& cand : candidates) {
    MaximalWeakRow row;
    row.candidate = cand.name;
    bool boundary_ok = true;
    for (const auto& [y, gy] : p.g)
      if (cand.values[static_cast<std::size_t>(y)] > gy + tol) boundary_ok = false;
    if (!boundary_ok) {
      row.member = false;
      row.note = "rejected: exceeds g on the boundary";
      report.rows.push_back(row);
      continue;
    }
    bool slope_ok = true;
    if (family.empty()) {
      slope_ok = weak_solution_check(cand.values, g, p.f, {}, interior, radii, tol, true).all_pass();
    } else {
      for (const auto& m : family) {
        const auto wr = weak_solution_check(cand.values, g, p.f, m.touched_vertices(g), interior,
                                            radii, tol, true);
        if (!wr.all_pass()) slope_ok = false;
      }
    }
    row.member = slope_ok;
    if (!slope_ok) row.note = "rejected: fails the weak-subsolution slope test";
    if (row.member) {
      double excess = 0.0;
      for (std::size_t v = 0; v < cand.values.size(); ++v)
        if (std::isfinite(cand.values[v]) && std::isfinite(maximal.table.dist[v]))
          excess = std::max(excess, cand.values[v] - maximal.table.dist[v]);
      row.max_excess = excess;
      row.below_maximal = excess <= tol;
    }
    report.rows.push_back(row);
  }

  report.maximal_is_weak_subsolution =
      weak_solution_check(maximal.table.dist, g, p.f, union_touched, interior, radii, tol, true)
          .all_pass();

  report.pass = report.maximal_is_weak_subsolution;
  for (const auto& row : report.rows)
    if (row.member && !row.below_maximal) report.pass = false;
  return report;
}

}  // namespace eikonal
