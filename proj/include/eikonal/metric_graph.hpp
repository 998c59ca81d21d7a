#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "eikonal/common.hpp"

namespace eikonal {

using Point = std::array<double, 3>;

inline double euclid(const Point& a, const Point& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

struct Vertex {
  VertexId id = kNoVertex;
  Point pos{0.0, 0.0, 0.0};
  bool boundary = false;
};

struct Edge {
  VertexId u = kNoVertex;
  VertexId v = kNoVertex;
  double length = 0.0;
  double measure = 0.0;  // weight of the ambient measure carried by this edge
};

struct GraphMeta {
  std::string name;
  int ambient_dimension = 0;
  /// Smallest C such that graph paths realize C * (ambient Euclidean
  /// distance) between vertex pairs away from the domain rim. 1 for graphs
  /// whose edge lengths define the intrinsic metric; grid stencils report
  /// their direction-dependent deficit.
  double quasiconvexity = 1.0;
};

/// Discretized length space: undirected graph with positive edge lengths and
/// a nonnegative measure weight per edge. Immutable after construction; all
/// operations on it are pure and safe to run concurrently.
class MetricGraph {
 public:
  MetricGraph() = default;
  MetricGraph(std::vector<Vertex> vertices, std::vector<Edge> edges, GraphMeta meta,
              bool require_connected = true)
      : vertices_(std::move(vertices)), edges_(std::move(edges)), meta_(std::move(meta)) {
    validate(require_connected);
    build_adjacency();
  }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Vertex& vertex(VertexId v) const { return vertices_.at(static_cast<std::size_t>(v)); }
  const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
  const GraphMeta& meta() const { return meta_; }

  /// (neighbor vertex, connecting edge) pairs, ordered by construction.
  const std::vector<std::pair<VertexId, EdgeId>>& neighbors(VertexId v) const {
    return adjacency_.at(static_cast<std::size_t>(v));
  }

  VertexId other_end(EdgeId e, VertexId from) const {
    const Edge& ed = edge(e);
    return ed.u == from ? ed.v : ed.u;
  }

  /// Point at arc parameter s in [0, length] measured from edge.u toward
  /// edge.v, by linear interpolation of the endpoint coordinates.
  Point point_on_edge(EdgeId e, double s) const {
    const Edge& ed = edge(e);
    const double t = ed.length > 0 ? s / ed.length : 0.0;
    const Point& a = vertex(ed.u).pos;
    const Point& b = vertex(ed.v).pos;
    return Point{a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]), a[2] + t * (b[2] - a[2])};
  }

  std::vector<VertexId> boundary_vertices() const {
    std::vector<VertexId> out;
    for (const auto& v : vertices_)
      if (v.boundary) out.push_back(v.id);
    return out;
  }

  double total_measure() const {
    double m = 0.0;
    for (const auto& e : edges_) m += e.measure;
    return m;
  }

  /// Vertex nearest (in ambient coordinates) to the given point.
  VertexId nearest_vertex(const Point& p) const {
    VertexId best = kNoVertex;
    double bd = inf();
    for (const auto& v : vertices_) {
      const double d = euclid(v.pos, p);
      if (d < bd) {
        bd = d;
        best = v.id;
      }
    }
    return best;
  }

 private:
  void validate(bool require_connected) {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (vertices_[i].id != static_cast<VertexId>(i))
        throw ParseError("vertex ids must be dense 0..n-1; got id " +
                         std::to_string(vertices_[i].id) + " at index " + std::to_string(i));
    }
    for (std::size_t k = 0; k < edges_.size(); ++k) {
      const Edge& e = edges_[k];
      if (e.u < 0 || e.v < 0 || static_cast<std::size_t>(e.u) >= vertices_.size() ||
          static_cast<std::size_t>(e.v) >= vertices_.size())
        throw ParseError("edge " + std::to_string(k) + " references unknown vertex");
      if (!(e.length > 0.0))
        throw NonpositiveEdgeLength("edge " + std::to_string(k) + " has nonpositive length " +
                                    std::to_string(e.length));
      if (e.measure < 0.0)
        throw ParseError("edge " + std::to_string(k) + " has negative measure weight");
    }
    if (require_connected && !vertices_.empty()) {
      std::vector<std::vector<VertexId>> adj(vertices_.size());
      for (const auto& e : edges_) {
        adj[static_cast<std::size_t>(e.u)].push_back(e.v);
        adj[static_cast<std::size_t>(e.v)].push_back(e.u);
      }
      std::vector<char> seen(vertices_.size(), 0);
      std::vector<VertexId> stack{0};
      seen[0] = 1;
      std::size_t reached = 1;
      while (!stack.empty()) {
        const VertexId x = stack.back();
        stack.pop_back();
        for (VertexId y : adj[static_cast<std::size_t>(x)]) {
          if (!seen[static_cast<std::size_t>(y)]) {
            seen[static_cast<std::size_t>(y)] = 1;
            ++reached;
            stack.push_back(y);
          }
        }
      }
      if (reached != vertices_.size())
        throw DisconnectedGraph("graph is disconnected: reached " + std::to_string(reached) +
                                " of " + std::to_string(vertices_.size()) + " vertices");
    }
  }

  void build_adjacency() {
    adjacency_.assign(vertices_.size(), {});
    for (std::size_t k = 0; k < edges_.size(); ++k) {
      const Edge& e = edges_[k];
      adjacency_[static_cast<std::size_t>(e.u)].emplace_back(e.v, static_cast<EdgeId>(k));
      adjacency_[static_cast<std::size_t>(e.v)].emplace_back(e.u, static_cast<EdgeId>(k));
    }
  }

  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  GraphMeta meta_;
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adjacency_;
};

// ---------------------------------------------------------------------------
// Paths
// ---------------------------------------------------------------------------

/// One traversed piece of an edge: natural parameter runs in [0, length]
/// from edge.u to edge.v; traversal goes from t_begin to t_end (t_begin >
/// t_end means the edge is walked against its orientation).
struct PathSegment {
  EdgeId edge = kNoEdge;
  double t_begin = 0.0;
  double t_end = 0.0;
};

struct Path {
  std::vector<PathSegment> segments;

  bool empty() const { return segments.empty(); }

  double total_length() const {
    double s = 0.0;
    for (const auto& seg : segments) s += std::abs(seg.t_end - seg.t_begin);
    return s;
  }
};

/// Validates segment ranges and junction continuity. Junctions must sit at
/// shared vertices; only the path extremities may stop mid-edge.
inline void validate_path(const MetricGraph& g, const Path& path) {
  const auto ends_at_vertex = [&](const PathSegment& s, bool at_end) -> VertexId {
    const double t = at_end ? s.t_end : s.t_begin;
    const Edge& e = g.edge(s.edge);
    if (t == 0.0) return e.u;
    if (t == e.length) return e.v;
    return kNoVertex;
  };
  for (std::size_t i = 0; i < path.segments.size(); ++i) {
    const PathSegment& s = path.segments[i];
    if (s.edge < 0 || static_cast<std::size_t>(s.edge) >= g.edge_count())
      throw InvalidPath("segment " + std::to_string(i) + " references unknown edge");
    const double len = g.edge(s.edge).length;
    if (s.t_begin < 0 || s.t_begin > len || s.t_end < 0 || s.t_end > len)
      throw InvalidPath("segment " + std::to_string(i) + " exceeds edge length");
    if (s.t_begin == s.t_end) throw InvalidPath("segment " + std::to_string(i) + " is degenerate");
    if (i + 1 < path.segments.size()) {
      const VertexId a = ends_at_vertex(s, true);
      const VertexId b = ends_at_vertex(path.segments[i + 1], false);
      if (a == kNoVertex || b == kNoVertex || a != b)
        throw InvalidPath("segments " + std::to_string(i) + " and " + std::to_string(i + 1) +
                          " do not share an endpoint");
    }
  }
}

inline Path full_edge_path(const MetricGraph& g, const std::vector<std::pair<EdgeId, bool>>& hops) {
  Path p;
  for (auto [e, forward] : hops) {
    const double len = g.edge(e).length;
    p.segments.push_back(forward ? PathSegment{e, 0.0, len} : PathSegment{e, len, 0.0});
  }
  return p;
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

struct GraphSpec {
  struct V {
    VertexId id;
    Point pos{0, 0, 0};
    bool boundary = false;
  };
  struct E {
    VertexId u, v;
    double length;
    double measure = 0.0;
  };
  std::string name;
  int ambient_dimension = 0;
  std::vector<V> vertices;
  std::vector<E> edges;
};

/// Validates and freezes a graph description. Vertex ids may be sparse; they
/// are compacted in increasing id order (outputs report positions, not ids,
/// so the relabeling is observable only through CSV vertex_id columns).
inline MetricGraph build_graph(const GraphSpec& spec, bool require_connected = true) {
  std::vector<GraphSpec::V> vs = spec.vertices;
  std::sort(vs.begin(), vs.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  std::map<VertexId, VertexId> remap;
  std::vector<Vertex> vertices;
  vertices.reserve(vs.size());
  for (const auto& v : vs) {
    if (remap.count(v.id)) throw ParseError("duplicate vertex id " + std::to_string(v.id));
    const VertexId nid = static_cast<VertexId>(vertices.size());
    remap[v.id] = nid;
    vertices.push_back(Vertex{nid, v.pos, v.boundary});
  }
  std::vector<Edge> edges;
  edges.reserve(spec.edges.size());
  for (std::size_t k = 0; k < spec.edges.size(); ++k) {
    const auto& e = spec.edges[k];
    const auto iu = remap.find(e.u);
    const auto iv = remap.find(e.v);
    if (iu == remap.end() || iv == remap.end())
      throw ParseError("edge " + std::to_string(k) + " references unknown vertex id " +
                       std::to_string(iu == remap.end() ? e.u : e.v));
    edges.push_back(Edge{iu->second, iv->second, e.length, e.measure});
  }
  GraphMeta meta;
  meta.name = spec.name;
  meta.ambient_dimension = spec.ambient_dimension;
  return MetricGraph(std::move(vertices), std::move(edges), std::move(meta), require_connected);
}

// --- grid sampling of Euclidean domains -----------------------------------

struct DomainSpec {
  enum class Shape { Interval, Rectangle, Disk } shape = Shape::Interval;
  // Interval: [x0, x1]. Rectangle: [x0,x1] x [y0,y1]. Disk: center (cx,cy), radius.
  double x0 = -1.0, x1 = 1.0;
  double y0 = 0.0, y1 = 0.0;
  double cx = 0.0, cy = 0.0, radius = 1.0;

  /// Closed-domain membership with slack for the rounding of lattice
  /// coordinates i*h (the endpoint of [-1,1] at h=1e-3 lands at 1+2e-16).
  bool contains(double x, double y, double slack = 0.0) const {
    switch (shape) {
      case Shape::Interval:
        return x >= x0 - slack && x <= x1 + slack;
      case Shape::Rectangle:
        return x >= x0 - slack && x <= x1 + slack && y >= y0 - slack && y <= y1 + slack;
      case Shape::Disk:
        return std::hypot(x - cx, y - cy) <= radius + slack;
    }
    return false;
  }

  double boundary_distance(double x, double y) const {
    switch (shape) {
      case Shape::Interval:
        return std::min(x - x0, x1 - x);
      case Shape::Rectangle:
        return std::min(std::min(x - x0, x1 - x), std::min(y - y0, y1 - y));
      case Shape::Disk:
        return radius - std::hypot(x - cx, y - cy);
    }
    return 0.0;
  }

  double lebesgue() const {
    switch (shape) {
      case Shape::Interval:
        return x1 - x0;
      case Shape::Rectangle:
        return (x1 - x0) * (y1 - y0);
      case Shape::Disk:
        return M_PI * radius * radius;
    }
    return 0.0;
  }

  int dimension() const { return shape == Shape::Interval ? 1 : 2; }
};

inline const std::vector<std::pair<int, int>>& stencil_offsets(int stencil) {
  static const std::vector<std::pair<int, int>> s4 = {{1, 0}, {0, 1}};
  static const std::vector<std::pair<int, int>> s8 = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
  static const std::vector<std::pair<int, int>> s16 = {{1, 0},  {0, 1},  {1, 1},  {1, -1},
                                                       {2, 1},  {1, 2},  {2, -1}, {1, -2}};
  switch (stencil) {
    case 4:
      return s4;
    case 8:
      return s8;
    case 16:
      return s16;
    default:
      throw ParseError("stencil must be one of 4, 8, 16");
  }
}

/// Worst-case ratio of stencil-path length to Euclidean distance, maximized
/// over directions: for each direction the cheapest nonnegative combination
/// of the two adjacent stencil generators is solved in closed form.
inline double stencil_quasiconvexity_uncached(int stencil) {
  const auto& offs = stencil_offsets(stencil);
  std::vector<std::pair<double, std::pair<double, double>>> gens;  // (angle, unit dir)
  for (auto [ox, oy] : offs) {
    for (int sx : {1, -1}) {
      const double x = sx * ox, y = sx * oy;
      const double a = std::atan2(y, x);
      gens.push_back({a, {x, y}});
    }
  }
  std::sort(gens.begin(), gens.end());
  double worst = 1.0;
  const int kDirections = 20000;
  for (int i = 0; i < kDirections; ++i) {
    const double theta = 2.0 * M_PI * i / kDirections;
    const double wx = std::cos(theta), wy = std::sin(theta);
    double best = inf();
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const auto& g1 = gens[k].second;
      const auto& g2 = gens[(k + 1) % gens.size()].second;
      const double det = g1.first * g2.second - g1.second * g2.first;
      if (std::abs(det) < 1e-15) continue;
      const double a = (wx * g2.second - wy * g2.first) / det;
      const double b = (g1.first * wy - g1.second * wx) / det;
      if (a < -1e-12 || b < -1e-12) continue;
      const double cost = std::max(a, 0.0) * std::hypot(g1.first, g1.second) +
                          std::max(b, 0.0) * std::hypot(g2.first, g2.second);
      best = std::min(best, cost);
    }
    worst = std::max(worst, best);
  }
  return worst;
}

inline double stencil_quasiconvexity(int stencil) {
  static const double s4 = stencil_quasiconvexity_uncached(4);
  static const double s8 = stencil_quasiconvexity_uncached(8);
  static const double s16 = stencil_quasiconvexity_uncached(16);
  switch (stencil) {
    case 4:
      return s4;
    case 8:
      return s8;
    case 16:
      return s16;
    default:
      throw ParseError("stencil must be one of 4, 8, 16");
  }
}

/// Samples the closed domain on a lattice of pitch h anchored at the origin
/// (1D: x-axis). Vertices strictly within h of the boundary carry the
/// boundary flag. Edge measure weights sum exactly to the Lebesgue measure
/// of the domain.
inline MetricGraph grid_domain(const DomainSpec& domain, double h, int stencil = 8,
                               const std::string& name = "grid") {
  if (!(h > 0)) throw ParseError("grid pitch h must be positive");
  const int dim = domain.dimension();
  std::vector<Vertex> vertices;
  std::map<std::pair<long, long>, VertexId> index;

  double bx0 = domain.x0, bx1 = domain.x1, by0 = domain.y0, by1 = domain.y1;
  if (domain.shape == DomainSpec::Shape::Disk) {
    bx0 = domain.cx - domain.radius;
    bx1 = domain.cx + domain.radius;
    by0 = domain.cy - domain.radius;
    by1 = domain.cy + domain.radius;
  }
  const auto lo_i = static_cast<long>(std::floor(bx0 / h)) - 1;
  const auto hi_i = static_cast<long>(std::ceil(bx1 / h)) + 1;
  long lo_j = 0, hi_j = 0;
  if (dim == 2) {
    lo_j = static_cast<long>(std::floor(by0 / h)) - 1;
    hi_j = static_cast<long>(std::ceil(by1 / h)) + 1;
  }

  const double slack = 1e-9 * h;
  for (long i = lo_i; i <= hi_i; ++i) {
    for (long j = lo_j; j <= hi_j; ++j) {
      const double x = static_cast<double>(i) * h;
      const double y = dim == 2 ? static_cast<double>(j) * h : 0.0;
      if (!domain.contains(x, y, slack)) continue;
      const VertexId id = static_cast<VertexId>(vertices.size());
      index[{i, j}] = id;
      // Strictly within h of the boundary; the relative guard keeps vertices
      // whose true distance is exactly h (one lattice step) from flipping in
      // under coordinate rounding.
      const bool near_boundary = domain.boundary_distance(x, y) < h * (1.0 - 1e-9);
      vertices.push_back(Vertex{id, Point{x, y, 0.0}, near_boundary});
    }
  }
  if (vertices.empty()) throw EmptyDomain("no grid point falls inside the domain");

  const auto& offs = stencil_offsets(dim == 1 ? 4 : stencil);
  std::vector<Edge> edges;
  for (const auto& [ij, id] : index) {
    for (auto [ox, oy] : offs) {
      if (dim == 1 && oy != 0) continue;
      const auto it = index.find({ij.first + ox, ij.second + oy});
      if (it == index.end()) continue;
      const double len = h * std::sqrt(static_cast<double>(ox * ox + oy * oy));
      edges.push_back(Edge{id, it->second, len, 0.0});
    }
  }

  // Measure: each vertex carries a cell volume h^dim, split over its incident
  // edges, then rescaled so the total matches the Lebesgue measure exactly.
  std::vector<int> degree(vertices.size(), 0);
  for (const auto& e : edges) {
    ++degree[static_cast<std::size_t>(e.u)];
    ++degree[static_cast<std::size_t>(e.v)];
  }
  const double cell = std::pow(h, dim);
  double total = 0.0;
  for (auto& e : edges) {
    e.measure = cell / degree[static_cast<std::size_t>(e.u)] + cell / degree[static_cast<std::size_t>(e.v)];
    total += e.measure;
  }
  if (total > 0) {
    const double scale = domain.lebesgue() / total;
    for (auto& e : edges) e.measure *= scale;
  }

  GraphMeta meta;
  meta.name = name;
  meta.ambient_dimension = dim;
  meta.quasiconvexity = dim == 1 ? 1.0 : stencil_quasiconvexity(stencil);
  return MetricGraph(std::move(vertices), std::move(edges), std::move(meta));
}

/// Subdivides every edge into `factor` equal pieces. The graph metric
/// between original vertices and the total measure are preserved (exactly
/// for power-of-two factors; to rounding otherwise): the last sub-edge takes
/// the length remainder so the pieces sum back to the original length.
inline MetricGraph refine(const MetricGraph& g, int factor) {
  if (factor < 2) throw ParseError("refine factor must be >= 2");
  std::vector<Vertex> vertices = g.vertices();
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    const double sub_len = e.length / factor;
    const double sub_meas = e.measure / factor;
    VertexId prev = e.u;
    double used_len = 0.0, used_meas = 0.0;
    for (int k = 1; k < factor; ++k) {
      const double t = static_cast<double>(k) / factor;
      const Point a = g.vertex(e.u).pos;
      const Point b = g.vertex(e.v).pos;
      const VertexId nid = static_cast<VertexId>(vertices.size());
      vertices.push_back(Vertex{nid,
                                Point{a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]),
                                      a[2] + t * (b[2] - a[2])},
                                false});
      edges.push_back(Edge{prev, nid, sub_len, sub_meas});
      used_len += sub_len;
      used_meas += sub_meas;
      prev = nid;
    }
    edges.push_back(Edge{prev, e.v, e.length - used_len, e.measure - used_meas});
  }
  GraphMeta meta = g.meta();
  return MetricGraph(std::move(vertices), std::move(edges), std::move(meta));
}

// ---------------------------------------------------------------------------
// Graph distance d_G (shortest path by edge lengths)
// ---------------------------------------------------------------------------

/// Multi-source Dijkstra over a caller-supplied nonnegative (possibly +inf)
/// weight per edge. Ties in the heap break on the smaller vertex id. Returns
/// distances, predecessor vertices and predecessor edges.
struct ShortestPathTree {
  std::vector<double> dist;
  std::vector<VertexId> parent;
  std::vector<EdgeId> parent_edge;
};

inline ShortestPathTree dijkstra(const MetricGraph& g, const std::vector<double>& edge_weight,
                                 const std::vector<std::pair<VertexId, double>>& sources,
                                 double radius_cap = std::numeric_limits<double>::infinity(),
                                 VertexId stop_at = kNoVertex) {
  const std::size_t n = g.vertex_count();
  ShortestPathTree t;
  t.dist.assign(n, inf());
  t.parent.assign(n, kNoVertex);
  t.parent_edge.assign(n, kNoEdge);
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  for (const auto& [s, init] : sources) {
    if (s < 0 || static_cast<std::size_t>(s) >= n) throw ParseError("source vertex out of range");
    if (init < t.dist[static_cast<std::size_t>(s)]) {
      t.dist[static_cast<std::size_t>(s)] = init;
      heap.emplace(init, s);
    }
  }
  std::vector<char> done(n, 0);
  while (!heap.empty()) {
    const auto [d, x] = heap.top();
    heap.pop();
    if (done[static_cast<std::size_t>(x)]) continue;
    done[static_cast<std::size_t>(x)] = 1;
    if (d > radius_cap) break;
    if (x == stop_at) break;
    for (const auto& [y, e] : g.neighbors(x)) {
      if (done[static_cast<std::size_t>(y)]) continue;
      const double w = edge_weight[static_cast<std::size_t>(e)];
      const double nd = d + w;
      if (nd < t.dist[static_cast<std::size_t>(y)]) {
        t.dist[static_cast<std::size_t>(y)] = nd;
        t.parent[static_cast<std::size_t>(y)] = x;
        t.parent_edge[static_cast<std::size_t>(y)] = e;
        heap.emplace(nd, y);
      }
    }
  }
  return t;
}

inline std::vector<double> edge_lengths(const MetricGraph& g) {
  std::vector<double> w(g.edge_count());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = g.edge(static_cast<EdgeId>(k)).length;
  return w;
}

/// d_G from a set of sources (unit initial values zero).
inline ShortestPathTree graph_distance(const MetricGraph& g, const std::vector<VertexId>& sources,
                                       double radius_cap = std::numeric_limits<double>::infinity()) {
  std::vector<std::pair<VertexId, double>> src;
  src.reserve(sources.size());
  for (VertexId s : sources) src.emplace_back(s, 0.0);
  return dijkstra(g, edge_lengths(g), src, radius_cap);
}

inline double graph_distance_pair(const MetricGraph& g, VertexId x, VertexId y) {
  auto t = dijkstra(g, edge_lengths(g), {{x, 0.0}}, inf(), y);
  return t.dist[static_cast<std::size_t>(y)];
}

}  // namespace eikonal
