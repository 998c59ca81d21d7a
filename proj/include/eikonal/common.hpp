#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>
#include <functional>

namespace eikonal {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;

inline constexpr VertexId kNoVertex = -1;
inline constexpr EdgeId kNoEdge = -1;

inline double inf() { return std::numeric_limits<double>::infinity(); }

/// Floating-point slack used by checks the math guarantees exactly
/// (metric axioms, Lax inequality, monotonicity). Dijkstra sums associate
/// differently along reversed paths, so bitwise equality is not available.
inline constexpr double kFpNoiseTol = 1e-12;

// ---------------------------------------------------------------------------
// Error types. One class per named failure mode in the public contracts.
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DisconnectedGraph : Error {
  using Error::Error;
};
struct NonpositiveEdgeLength : Error {
  using Error::Error;
};
struct EmptyBoundary : Error {
  using Error::Error;
};
struct EmptyDomain : Error {
  using Error::Error;
};
struct InvalidPath : Error {
  using Error::Error;
};
struct EmptySourceSet : Error {
  using Error::Error;
};
struct BudgetExceeded : Error {
  using Error::Error;
};
struct EmptyNeighborhood : Error {
  using Error::Error;
};
struct EmptyEffectiveBoundary : Error {
  using Error::Error;
};
struct DegenerateRadii : Error {
  using Error::Error;
};
struct InsufficientPairs : Error {
  using Error::Error;
};
struct MissingLinfTag : Error {
  using Error::Error;
};
struct UnknownScenario : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Small utilities shared across modules.
// ---------------------------------------------------------------------------

/// Runs fn(i) for i in [0, n). With workers > 1 the index range is split into
/// contiguous chunks, one thread each; fn must be pure with respect to shared
/// state (all operations in this library write only to caller-owned slots).
inline void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t nthreads = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  const std::size_t chunk = (n + nthreads - 1) / nthreads;
  for (std::size_t t = 0; t < nthreads; ++t) {
    const std::size_t lo = t * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace eikonal
