#pragma once

// Test-side oracles, independent of the library's solver path: exhaustive
// path enumeration, tiny random graph generation, closed forms.

#include <map>
#include <random>
#include <vector>

#include "eikonal/metric_graph.hpp"
#include "eikonal/weight_field.hpp"

namespace oracles {

using eikonal::EdgeId;
using eikonal::MetricGraph;
using eikonal::VertexId;

/// Minimum cost over all simple paths from src to every vertex, by DFS over
/// the adjacency with an explicit visited mask. Costs accumulate source-out,
/// matching the arithmetic order of a label-setting solver, so agreement can
/// be checked exactly. Exponential; for graphs of <= 10 vertices only.
inline std::vector<double> enumerate_shortest(const MetricGraph& g,
                                              const std::vector<double>& weights, VertexId src,
                                              double initial = 0.0) {
  std::vector<double> best(g.vertex_count(), eikonal::inf());
  std::vector<char> visited(g.vertex_count(), 0);
  best[static_cast<std::size_t>(src)] = initial;

  struct Dfs {
    const MetricGraph& g;
    const std::vector<double>& w;
    std::vector<double>& best;
    std::vector<char>& visited;
    void run(VertexId x, double cost) {
      visited[static_cast<std::size_t>(x)] = 1;
      for (const auto& [y, e] : g.neighbors(x)) {
        if (visited[static_cast<std::size_t>(y)]) continue;
        const double we = w[static_cast<std::size_t>(e)];
        if (!std::isfinite(we)) continue;
        const double c = cost + we;
        if (c < best[static_cast<std::size_t>(y)]) best[static_cast<std::size_t>(y)] = c;
        run(y, c);
      }
      visited[static_cast<std::size_t>(x)] = 0;
    }
  } dfs{g, weights, best, visited};
  dfs.run(src, initial);
  return best;
}

/// Multi-source variant: elementwise min over per-source enumerations with
/// their initial offsets.
inline std::vector<double> enumerate_shortest_multi(
    const MetricGraph& g, const std::vector<double>& weights,
    const std::map<VertexId, double>& sources) {
  std::vector<double> best(g.vertex_count(), eikonal::inf());
  for (const auto& [s, init] : sources) {
    const auto d = enumerate_shortest(g, weights, s, init);
    for (std::size_t v = 0; v < best.size(); ++v) best[v] = std::min(best[v], d[v]);
  }
  return best;
}

struct RandomGraph {
  MetricGraph graph;
  std::vector<double> f_per_edge;
};

/// Connected random graph: a random spanning tree plus a few extra edges,
/// lengths in [0.5, 2], per-edge constant f in [f_lo, f_hi].
inline RandomGraph random_graph(std::mt19937_64& rng, int max_vertices = 8, double f_lo = 1.0,
                                double f_hi = 5.0) {
  std::uniform_int_distribution<int> nv(2, max_vertices);
  const int n = nv(rng);
  std::uniform_real_distribution<double> len(0.5, 2.0);
  std::uniform_real_distribution<double> fval(f_lo, f_hi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  eikonal::GraphSpec spec;
  spec.name = "random";
  spec.ambient_dimension = 0;
  for (int i = 0; i < n; ++i) spec.vertices.push_back({i, {}, false});
  std::vector<double> f;
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> prev(0, i - 1);
    spec.edges.push_back({prev(rng), i, len(rng), 0.0});
    f.push_back(fval(rng));
  }
  const int extra = static_cast<int>(unit(rng) * n);
  for (int k = 0; k < extra; ++k) {
    std::uniform_int_distribution<int> any(0, n - 1);
    const int a = any(rng), b = any(rng);
    if (a == b) continue;
    spec.edges.push_back({a, b, len(rng), 0.0});
    f.push_back(fval(rng));
  }
  RandomGraph out{eikonal::build_graph(spec), std::move(f)};
  return out;
}

}  // namespace oracles
