#pragma once

#include <functional>
#include <memory>
#include <random>
#include <utility>
#include <vector>

#include "eikonal/metric_graph.hpp"

namespace eikonal {

enum class Integrability { None, Lp, Linf };

/// The inhomogeneous term f, evaluated along edges at arc parameter
/// s in [0, length] (the edge's natural orientation). Values live in
/// (0, +inf]; evaluators must be deterministic. alpha is the declared
/// uniform lower bound inf f > 0.
class WeightField {
 public:
  using Evaluator = std::function<double(const MetricGraph&, EdgeId, double)>;
  using PointFn = std::function<double(const Point&)>;

  WeightField() = default;
  WeightField(Evaluator eval, double alpha, Integrability tag = Integrability::None,
              double p = 0.0, double linf_bound = 0.0)
      : eval_(std::move(eval)), alpha_(alpha), tag_(tag), p_(p), linf_bound_(linf_bound) {
    if (!(alpha_ > 0)) throw ParseError("weight field lower bound alpha must be positive");
  }

  double operator()(const MetricGraph& g, EdgeId e, double s) const { return eval_(g, e, s); }

  double alpha() const { return alpha_; }
  Integrability integrability() const { return tag_; }
  double p() const { return p_; }
  double linf_bound() const { return linf_bound_; }

  /// f evaluated pointwise on ambient coordinates, interpolated along edges.
  static WeightField pointwise(PointFn fn, double alpha, Integrability tag = Integrability::None,
                               double p = 0.0, double linf_bound = 0.0) {
    auto shared = std::make_shared<PointFn>(std::move(fn));
    return WeightField(
        [shared](const MetricGraph& g, EdgeId e, double s) { return (*shared)(g.point_on_edge(e, s)); },
        alpha, tag, p, linf_bound);
  }

  static WeightField constant(double c) {
    return WeightField([c](const MetricGraph&, EdgeId, double) { return c; }, c,
                       Integrability::Linf, 0.0, c);
  }

  static WeightField per_edge(std::vector<double> values, double alpha) {
    double bound = 0.0;
    for (double v : values) bound = std::max(bound, v);
    auto shared = std::make_shared<std::vector<double>>(std::move(values));
    return WeightField(
        [shared](const MetricGraph&, EdgeId e, double) { return (*shared)[static_cast<std::size_t>(e)]; },
        alpha, Integrability::Linf, 0.0, bound);
  }

  /// min(f, M); the result is essentially bounded by construction.
  WeightField truncated(double M) const {
    if (!(M > alpha_)) throw ParseError("truncation level M must exceed alpha");
    Evaluator base = eval_;
    const double bound = tag_ == Integrability::Linf ? std::min(M, linf_bound_) : M;
    return WeightField(
        [base, M](const MetricGraph& g, EdgeId e, double s) { return std::min(base(g, e, s), M); },
        alpha_, Integrability::Linf, 0.0, bound);
  }

  /// Pointwise rescale c*f (c > 0).
  WeightField scaled(double c) const {
    if (!(c > 0)) throw ParseError("scale factor must be positive");
    Evaluator base = eval_;
    return WeightField(
        [base, c](const MetricGraph& g, EdgeId e, double s) { return c * base(g, e, s); },
        c * alpha_, tag_, p_, linf_bound_ > 0 ? c * linf_bound_ : 0.0);
  }

 private:
  Evaluator eval_;
  double alpha_ = 1.0;
  Integrability tag_ = Integrability::None;
  double p_ = 0.0;
  double linf_bound_ = 0.0;
};

struct LowerBoundViolation {
  EdgeId edge;
  double s;
  double value;
};

/// Samples f across edges and reports evaluations below alpha. Testing aid
/// for the declared lower bound; an empty result is evidence, not proof.
inline std::vector<LowerBoundViolation> check_lower_bound(const MetricGraph& g,
                                                          const WeightField& f,
                                                          int samples_per_edge = 8,
                                                          unsigned seed = 0) {
  std::mt19937_64 rng(seed);
  std::vector<LowerBoundViolation> out;
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e) {
    const double len = g.edge(e).length;
    std::uniform_real_distribution<double> dist(0.0, len);
    for (int k = 0; k < samples_per_edge; ++k) {
      const double s = dist(rng);
      const double v = f(g, e, s);
      if (v < f.alpha()) out.push_back({e, s, v});
    }
  }
  return out;
}

}  // namespace eikonal
