#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "eikonal/quadrature.hpp"

namespace eikonal {

/// Single- or multi-source distances in the optical-length metric L_f,
/// with the witness shortest-path tree. dist is in units of the integral
/// of f; +inf marks vertices unreachable through finite-weight edges
/// (the admissible curve class between them is empty).
struct OpticalTable {
  std::vector<VertexId> sources;
  std::vector<double> dist;
  std::vector<VertexId> parent;
  std::vector<EdgeId> parent_edge;
  double quad_points_per_unit = 0.0;
  double truncation = std::numeric_limits<double>::quiet_NaN();  // NaN = none

  double at(VertexId v) const { return dist.at(static_cast<std::size_t>(v)); }
};

inline OpticalTable table_from_tree(const MetricGraph&, ShortestPathTree&& t,
                                    std::vector<VertexId> sources, const Quadrature& quad) {
  OpticalTable out;
  out.sources = std::move(sources);
  out.dist = std::move(t.dist);
  out.parent = std::move(t.parent);
  out.parent_edge = std::move(t.parent_edge);
  out.quad_points_per_unit = quad.points_per_unit;
  return out;
}

/// Lax/value-function table: dist(v) = min over sources s of
/// (initial(s) + L_f(s, v)), label-setting over per-edge optical costs,
/// ties resolved toward the smaller vertex id.
inline OpticalTable optical_from_sources(const MetricGraph& g, const std::vector<double>& weights,
                                         const std::vector<VertexId>& sources,
                                         const std::map<VertexId, double>& initial,
                                         const Quadrature& quad) {
  if (sources.empty()) throw EmptySourceSet("optical_from_sources requires at least one source");
  std::vector<std::pair<VertexId, double>> src;
  src.reserve(sources.size());
  for (VertexId s : sources) {
    const auto it = initial.find(s);
    src.emplace_back(s, it == initial.end() ? 0.0 : it->second);
  }
  return table_from_tree(g, dijkstra(g, weights, src), sources, quad);
}

inline OpticalTable optical_from_sources(const MetricGraph& g, const WeightField& f,
                                         const std::vector<VertexId>& sources,
                                         const std::map<VertexId, double>& initial = {},
                                         const Quadrature& quad = {}) {
  return optical_from_sources(g, edge_weights(g, f, quad), sources, initial, quad);
}

/// L_f(x, y) plus a witness path reconstructed from the parent tree.
/// (inf, empty path) when no finite-weight path joins x and y.
inline std::pair<double, Path> optical_pair(const MetricGraph& g, const WeightField& f, VertexId x,
                                            VertexId y, const Quadrature& quad = {}) {
  const auto weights = edge_weights(g, f, quad);
  auto t = dijkstra(g, weights, {{x, 0.0}}, inf(), y);
  const double value = t.dist[static_cast<std::size_t>(y)];
  Path witness;
  if (std::isfinite(value) && x != y) {
    std::vector<std::pair<EdgeId, bool>> hops;
    VertexId cur = y;
    while (cur != x) {
      const EdgeId e = t.parent_edge[static_cast<std::size_t>(cur)];
      const VertexId prev = t.parent[static_cast<std::size_t>(cur)];
      hops.emplace_back(e, g.edge(e).v == cur);
      cur = prev;
    }
    std::reverse(hops.begin(), hops.end());
    witness = full_edge_path(g, hops);
  }
  return {value, std::move(witness)};
}

// ---------------------------------------------------------------------------
// Metric-axiom verification
// ---------------------------------------------------------------------------

struct MetricViolation {
  std::string kind;
  VertexId x, y, z;
  double magnitude;
};

struct MetricAxiomReport {
  int triples_checked = 0;
  double tolerance = kFpNoiseTol;
  std::vector<MetricViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Samples vertex triples and checks nonnegativity, identity of
/// indiscernibles, symmetry, the triangle inequality and the lower bound
/// L_f >= alpha * d_G. Violations beyond the floating-point tolerance are
/// listed with their magnitude.
inline MetricAxiomReport check_metric_axioms(const MetricGraph& g, const WeightField& f,
                                             int sample_count = 200, unsigned seed = 0,
                                             const Quadrature& quad = {}) {
  MetricAxiomReport report;
  const auto weights = edge_weights(g, f, quad);
  const auto lengths = edge_lengths(g);
  const std::size_t n = g.vertex_count();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));

  std::map<VertexId, std::vector<double>> ltable, dtable;
  const auto lf = [&](VertexId a) -> const std::vector<double>& {
    auto it = ltable.find(a);
    if (it == ltable.end())
      it = ltable.emplace(a, dijkstra(g, weights, {{a, 0.0}}).dist).first;
    return it->second;
  };
  const auto dg = [&](VertexId a) -> const std::vector<double>& {
    auto it = dtable.find(a);
    if (it == dtable.end())
      it = dtable.emplace(a, dijkstra(g, lengths, {{a, 0.0}}).dist).first;
    return it->second;
  };

  const double tol = report.tolerance;
  const auto scale = [](double a, double b) { return std::max(1.0, std::max(std::abs(a), std::abs(b))); };
  for (int k = 0; k < sample_count; ++k) {
    const VertexId x = pick(rng), y = pick(rng), z = pick(rng);
    const double lxy = lf(x)[static_cast<std::size_t>(y)];
    const double lyx = lf(y)[static_cast<std::size_t>(x)];
    const double lxz = lf(x)[static_cast<std::size_t>(z)];
    const double lzy = lf(z)[static_cast<std::size_t>(y)];
    const double dxy = dg(x)[static_cast<std::size_t>(y)];
    ++report.triples_checked;

    if (lxy < 0) report.violations.push_back({"nonnegativity", x, y, z, -lxy});
    if (x == y && lxy != 0) report.violations.push_back({"identity", x, y, z, lxy});
    if (x != y && !(lxy > 0)) report.violations.push_back({"identity", x, y, z, lxy});
    if (std::isfinite(lxy) || std::isfinite(lyx)) {
      const double gap = std::abs(lxy - lyx);
      if (!(gap <= tol * scale(lxy, lyx)))
        report.violations.push_back({"symmetry", x, y, z, gap});
    }
    if (std::isfinite(lxz) && std::isfinite(lzy)) {
      const double excess = lxy - (lxz + lzy);
      if (excess > tol * scale(lxy, lxz + lzy))
        report.violations.push_back({"triangle", x, y, z, excess});
    }
    if (std::isfinite(lxy)) {
      const double deficit = f.alpha() * dxy - lxy;
      if (deficit > tol * scale(lxy, f.alpha() * dxy))
        report.violations.push_back({"lower_bound", x, y, z, deficit});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Topology-compatibility modulus
// ---------------------------------------------------------------------------

struct TopologyModulusReport {
  // radius -> sup{ L_f(x,y) : d_G(x,y) <= r }, monotone in r.
  std::map<double, double> modulus;
  // Same sup restricted to pairs within r of the boundary (collar variant).
  std::map<double, double> collar_modulus;
  bool all_pairs = true;
  int source_count = 0;
  double smallest_radius_value = std::numeric_limits<double>::quiet_NaN();
};

struct TopologyBudget {
  std::size_t all_pairs_vertex_cap = 5000;
  int sample_sources = 64;
  unsigned seed = 0;
  bool require_all_pairs = false;
};

inline TopologyModulusReport topology_modulus(const MetricGraph& g, const WeightField& f,
                                              const std::vector<double>& r_grid,
                                              const Quadrature& quad = {},
                                              const TopologyBudget& budget = {}) {
  for (double r : r_grid)
    if (!(r > 0)) throw ParseError("topology_modulus radii must be positive");
  const std::size_t n = g.vertex_count();
  std::vector<VertexId> srcs;
  bool all_pairs = n <= budget.all_pairs_vertex_cap;
  if (!all_pairs && budget.require_all_pairs)
    throw BudgetExceeded("all-pairs topology modulus requested on " + std::to_string(n) +
                         " vertices (cap " + std::to_string(budget.all_pairs_vertex_cap) + ")");
  if (all_pairs) {
    srcs.resize(n);
    for (std::size_t i = 0; i < n; ++i) srcs[i] = static_cast<VertexId>(i);
  } else {
    std::mt19937_64 rng(budget.seed);
    std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
    for (int i = 0; i < budget.sample_sources; ++i) srcs.push_back(pick(rng));
    std::sort(srcs.begin(), srcs.end());
    srcs.erase(std::unique(srcs.begin(), srcs.end()), srcs.end());
  }

  const auto weights = edge_weights(g, f, quad);
  const auto lengths = edge_lengths(g);

  std::vector<double> bdist;  // d_G to the boundary (for the collar variant)
  const auto bvs = g.boundary_vertices();
  if (!bvs.empty()) bdist = graph_distance(g, bvs).dist;

  std::vector<double> rs = r_grid;
  std::sort(rs.begin(), rs.end());
  TopologyModulusReport report;
  report.all_pairs = all_pairs;
  report.source_count = static_cast<int>(srcs.size());
  for (double r : rs) {
    report.modulus[r] = 0.0;
    report.collar_modulus[r] = bdist.empty() ? std::numeric_limits<double>::quiet_NaN() : 0.0;
  }

  const double rmax = rs.back();
  for (VertexId s : srcs) {
    const auto dg = dijkstra(g, lengths, {{s, 0.0}}, rmax).dist;
    const auto lf = dijkstra(g, weights, {{s, 0.0}}).dist;
    for (std::size_t y = 0; y < n; ++y) {
      const double d = dg[y];
      if (!(d <= rmax)) continue;
      const double l = lf[y];
      for (double r : rs) {
        if (d > r) continue;
        double& m = report.modulus[r];
        m = std::max(m, l);
        if (!bdist.empty() && bdist[static_cast<std::size_t>(s)] <= r && bdist[y] <= r) {
          double& c = report.collar_modulus[r];
          c = std::max(c, l);
        }
      }
    }
  }
  report.smallest_radius_value = report.modulus.begin()->second;
  return report;
}

/// Identical to optical_from_sources with the running cost truncated at M.
inline OpticalTable truncated_solve(const MetricGraph& g, const WeightField& f, double M,
                                    const std::vector<VertexId>& sources,
                                    const std::map<VertexId, double>& initial = {},
                                    const Quadrature& quad = {}) {
  if (std::isinf(M)) {
    auto t = optical_from_sources(g, f, sources, initial, quad);
    return t;
  }
  auto t = optical_from_sources(g, f.truncated(M), sources, initial, quad);
  t.truncation = M;
  return t;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

inline void write_table_csv(const MetricGraph& g, const OpticalTable& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << "vertex_id,x,y,dist,parent_id\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto& vx = g.vertex(static_cast<VertexId>(v));
    out << v << ',' << format_double(vx.pos[0]) << ',' << format_double(vx.pos[1]) << ','
        << format_double(t.dist[v]) << ',' << t.parent[v] << '\n';
  }
}

}  // namespace eikonal
