#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "eikonal/weight_field.hpp"

namespace eikonal {

/// Composite midpoint quadrature with refinement. The node count per segment
/// starts at the density floor max(1, ceil(points_per_unit * length)) and
/// triples (midpoint refinement keeps previous nodes usable only under
/// tripling; we recompute, which is cheap at these sizes) until the estimate
/// settles or the level cap is hit. Midpoints never touch segment endpoints,
/// so integrable endpoint singularities are handled by refinement alone.
///
/// Integrals that keep growing at the cap with non-shrinking increments
/// (e.g. f ~ 1/s near an endpoint, whose increments approach ln 3 per level)
/// are reported as +inf: the admissible-curve class is empty along them.
struct Quadrature {
  double points_per_unit = 64.0;
  int max_levels = 10;             // node cap = n0 * 3^max_levels
  double rel_tol = 1e-7;
  double abs_tol = 1e-14;
  double divergence_ratio = 0.95;  // increment ratio at cap that flags divergence
};

namespace detail {

/// Midpoint sum with n uniform cells on [a, b] of s -> f(edge, s).
inline double midpoint_pass(const MetricGraph& g, const WeightField& f, EdgeId e, double a,
                            double b, std::int64_t n, bool& hit_inf) {
  const double w = (b - a) / static_cast<double>(n);
  double sum = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    const double s = a + (static_cast<double>(i) + 0.5) * w;
    const double v = f(g, e, s);
    if (std::isinf(v)) {
      hit_inf = true;
      return inf();
    }
    sum += v;
  }
  return sum * w;
}

inline double integrate_interval(const MetricGraph& g, const WeightField& f, EdgeId e, double a,
                                 double b, const Quadrature& quad) {
  if (a == b) return 0.0;
  if (a > b) std::swap(a, b);
  std::int64_t n = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(quad.points_per_unit * (b - a))));
  bool hit_inf = false;
  double prev = midpoint_pass(g, f, e, a, b, n, hit_inf);
  if (hit_inf) return inf();
  double prev_inc = inf();
  for (int level = 1; level <= quad.max_levels; ++level) {
    n *= 3;
    const double cur = midpoint_pass(g, f, e, a, b, n, hit_inf);
    if (hit_inf) return inf();
    const double inc = cur - prev;
    if (std::abs(inc) <= quad.rel_tol * std::abs(cur) + quad.abs_tol) return cur;
    if (level == quad.max_levels) {
      // Cap reached without settling: growing estimates whose increments do
      // not shrink indicate a divergent improper integral.
      if (inc > 0 && std::isfinite(prev_inc) && inc >= quad.divergence_ratio * prev_inc)
        return inf();
      return cur;
    }
    prev = cur;
    prev_inc = std::abs(inc);
  }
  return prev;
}

}  // namespace detail

/// I_f(path) = integral of f along the path, segment by segment. Orientation
/// of a segment does not change its node set, so reversal is exact. Returns
/// +inf as soon as any sample (or any divergent segment) is infinite.
inline double curve_integral(const MetricGraph& g, const WeightField& f, const Path& path,
                             const Quadrature& quad = {}) {
  validate_path(g, path);
  double total = 0.0;
  for (const auto& seg : path.segments) {
    const double v = detail::integrate_interval(g, f, seg.edge, seg.t_begin, seg.t_end, quad);
    if (std::isinf(v)) return inf();
    total += v;
  }
  return total;
}

/// Per-edge optical costs w(e) = integral of f over the whole edge.
/// w(e) >= alpha * length(e) up to quadrature error; +inf marks edges no
/// admissible curve may cross with finite cost.
inline std::vector<double> edge_weights(const MetricGraph& g, const WeightField& f,
                                        const Quadrature& quad = {}, int workers = 1) {
  std::vector<double> w(g.edge_count());
  parallel_for(g.edge_count(), workers, [&](std::size_t k) {
    const EdgeId e = static_cast<EdgeId>(k);
    w[k] = detail::integrate_interval(g, f, e, 0.0, g.edge(e).length, quad);
  });
  return w;
}

}  // namespace eikonal
