#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "eikonal/optical.hpp"

namespace eikonal {

// ---------------------------------------------------------------------------
// Homogeneous dimension from ball growth of the measure
// ---------------------------------------------------------------------------

struct QEstimate {
  double Q = 0.0;
  double residual = 0.0;  // RMS of the log-log regression residuals
  int centers = 0;
  int pairs = 0;
  bool residual_flag = false;  // large residual: not Ahlfors-regular growth
};

/// mu(B_r(c)) on the graph: edge measure summed over the d_G ball, with
/// partial edges pro-rated by the covered fraction of their length.
inline double ball_measure(const MetricGraph& g, const std::vector<double>& dist_from_center,
                           double r) {
  double total = 0.0;
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    const Edge& e = g.edge(static_cast<EdgeId>(k));
    const double du = dist_from_center[static_cast<std::size_t>(e.u)];
    const double dv = dist_from_center[static_cast<std::size_t>(e.v)];
    const double len = e.length;
    // Reachable stretches measured from each endpoint; their union is the
    // covered part of the edge.
    const double from_u = std::isfinite(du) ? std::clamp(r - du, 0.0, len) : 0.0;
    const double from_v = std::isfinite(dv) ? std::clamp(r - dv, 0.0, len) : 0.0;
    const double covered = std::min(len, from_u + from_v);
    total += e.measure * covered / len;
  }
  return total;
}

namespace detail {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  double rms = 0.0;
  int n = 0;
};

inline LineFit least_squares(const std::vector<std::pair<double, double>>& xy) {
  LineFit fit;
  fit.n = static_cast<int>(xy.size());
  if (fit.n < 2) return fit;
  double sx = 0, sy = 0;
  for (const auto& [x, y] : xy) {
    sx += x;
    sy += y;
  }
  const double mx = sx / fit.n, my = sy / fit.n;
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : xy) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (const auto& [x, y] : xy) {
    const double r = y - (fit.intercept + fit.slope * x);
    ss += r * r;
  }
  fit.rms = std::sqrt(ss / fit.n);
  if (fit.n > 2) fit.slope_se = std::sqrt(ss / (fit.n - 2) / sxx);
  return fit;
}

}  // namespace detail

/// Regression of log mu(B_r) against log r over sampled centers. Centers are
/// drawn away from the boundary (clearance = max radius) when possible so
/// truncated balls do not bias the slope.
inline QEstimate estimate_Q(const MetricGraph& g, const std::vector<double>& ball_radii,
                            int center_sample = 8, unsigned seed = 0) {
  if (ball_radii.size() < 2) throw DegenerateRadii("need at least two ball radii");
  double rmin = inf(), rmax = 0.0;
  for (double r : ball_radii) {
    if (!(r > 0)) throw DegenerateRadii("ball radii must be positive");
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  if (rmax / rmin < 10.0 - 1e-12)
    throw DegenerateRadii("ball radii must span at least one decade");

  std::vector<VertexId> pool;
  const auto bvs = g.boundary_vertices();
  if (!bvs.empty()) {
    const auto bdist = graph_distance(g, bvs).dist;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      if (bdist[v] > rmax) pool.push_back(static_cast<VertexId>(v));
  }
  if (pool.empty())
    for (std::size_t v = 0; v < g.vertex_count(); ++v) pool.push_back(static_cast<VertexId>(v));

  std::mt19937_64 rng(seed);
  std::vector<VertexId> centers;
  if (static_cast<int>(pool.size()) <= center_sample) {
    centers = pool;
  } else {
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::set<VertexId> chosen;
    while (static_cast<int>(chosen.size()) < center_sample) chosen.insert(pool[pick(rng)]);
    centers.assign(chosen.begin(), chosen.end());
  }

  const auto lengths = edge_lengths(g);
  std::vector<std::pair<double, double>> loglog;
  for (VertexId c : centers) {
    const auto dist = dijkstra(g, lengths, {{c, 0.0}}, rmax).dist;
    for (double r : ball_radii) {
      const double m = ball_measure(g, dist, r);
      if (m > 0) loglog.emplace_back(std::log(r), std::log(m));
    }
  }
  const auto fit = detail::least_squares(loglog);
  QEstimate q;
  q.Q = fit.slope;
  q.residual = fit.rms;
  q.centers = static_cast<int>(centers.size());
  q.pairs = fit.n;
  q.residual_flag = fit.rms > 0.2;
  return q;
}

// ---------------------------------------------------------------------------
// Hölder exponent fits
// ---------------------------------------------------------------------------

struct HolderFit {
  double exponent = 0.0;
  double constant = 0.0;
  double band = 0.0;  // +- 2 standard errors on the exponent
  int pairs_used = 0;
  std::pair<double, double> window{0.0, 0.0};
};

struct FitWindow {
  double lo = 0.0;
  double hi = 0.0;
};

/// Default fit window: the smallest available decade of d values, where
/// asymptotic exponents live.
inline FitWindow smallest_decade(const std::vector<std::pair<double, double>>& pairs) {
  double dmin = inf();
  for (const auto& [d, l] : pairs)
    if (d > 0 && l > 0) dmin = std::min(dmin, d);
  if (!std::isfinite(dmin)) throw InsufficientPairs("no positive (d, L) pairs");
  return {dmin, 10.0 * dmin};
}

/// Least-squares slope of log L against log d over pairs with d inside the
/// window; the multiplicative constant comes from the intercept.
inline HolderFit fit_holder(const std::vector<std::pair<double, double>>& pairs,
                            const FitWindow& window) {
  std::vector<std::pair<double, double>> loglog;
  for (const auto& [d, l] : pairs)
    if (d >= window.lo && d <= window.hi && d > 0 && l > 0 && std::isfinite(l))
      loglog.emplace_back(std::log(d), std::log(l));
  if (loglog.size() < 10)
    throw InsufficientPairs("fit_holder needs >= 10 pairs in the window, got " +
                            std::to_string(loglog.size()));
  const auto fit = detail::least_squares(loglog);
  HolderFit h;
  h.exponent = fit.slope;
  h.constant = std::exp(fit.intercept);
  h.band = 2.0 * fit.slope_se;
  h.pairs_used = fit.n;
  h.window = {window.lo, window.hi};
  return h;
}

inline HolderFit fit_holder(const std::vector<std::pair<double, double>>& pairs) {
  return fit_holder(pairs, smallest_decade(pairs));
}

/// (d_G, L_f) pairs from a common anchor vertex, the raw material for the
/// regularity fits.
inline std::vector<std::pair<double, double>> distance_pairs(const MetricGraph& g,
                                                             const WeightField& f, VertexId anchor,
                                                             const Quadrature& quad = {}) {
  const auto dg = dijkstra(g, edge_lengths(g), {{anchor, 0.0}}).dist;
  const auto lf = dijkstra(g, edge_weights(g, f, quad), {{anchor, 0.0}}).dist;
  std::vector<std::pair<double, double>> out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (static_cast<VertexId>(v) != anchor && std::isfinite(lf[v]))
      out.emplace_back(dg[v], lf[v]);
  return out;
}

// ---------------------------------------------------------------------------
// Lipschitz bound under an essential sup (A2-type data)
// ---------------------------------------------------------------------------

struct LipschitzReport {
  double max_ratio = 0.0;
  double bound = 0.0;  // C * ||f||_inf with C the graph quasiconvexity constant
  bool pass = false;
  int pairs = 0;
};

/// max sampled L_f/d_G against C * ||f||_inf. Requires the field to declare
/// essential boundedness.
inline LipschitzReport check_lipschitz_A2(const MetricGraph& g, const WeightField& f,
                                          int pair_sample = 200, unsigned seed = 0,
                                          const Quadrature& quad = {}) {
  if (f.integrability() != Integrability::Linf)
    throw MissingLinfTag("check_lipschitz_A2 requires an L^inf-tagged weight field");
  const auto weights = edge_weights(g, f, quad);
  const auto lengths = edge_lengths(g);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(g.vertex_count() - 1));
  LipschitzReport report;
  report.bound = g.meta().quasiconvexity * f.linf_bound();
  const int sources = std::max(1, pair_sample / 16);
  for (int i = 0; i < sources; ++i) {
    const VertexId x = pick(rng);
    const auto lf = dijkstra(g, weights, {{x, 0.0}}).dist;
    const auto dg = dijkstra(g, lengths, {{x, 0.0}}).dist;
    for (int j = 0; j < 16; ++j) {
      const VertexId y = pick(rng);
      if (y == x || !(dg[static_cast<std::size_t>(y)] > 0)) continue;
      if (!std::isfinite(lf[static_cast<std::size_t>(y)])) continue;
      report.max_ratio = std::max(report.max_ratio, lf[static_cast<std::size_t>(y)] /
                                                        dg[static_cast<std::size_t>(y)]);
      ++report.pairs;
    }
  }
  report.pass = report.max_ratio <= report.bound * (1.0 + kFpNoiseTol);
  return report;
}

inline void write_pairs_csv(const std::vector<std::pair<double, double>>& pairs,
                            const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << "d,L\n";
  for (const auto& [d, l] : pairs) out << format_double(d) << ',' << format_double(l) << '\n';
}

}  // namespace eikonal
