#include <catch2/catch_amalgamated.hpp>

#include "eikonal/dirichlet.hpp"
#include "eikonal/scenario.hpp"
#include "support/oracles.hpp"

using namespace eikonal;

TEST_CASE("1D singular scenario matches the closed form at moderate resolution") {
  BuiltScenario b = build_interval_sqrt(0.01);
  DirichletProblem problem(b.graph, b.field, b.g);
  const Solution sol = solve_lax(problem);
  double sup = 0.0;
  for (const auto& v : b.graph.vertices())
    sup = std::max(sup, std::abs(sol.u(v.id) - 2.0 * (1.0 - std::sqrt(std::abs(v.pos[0])))));
  CHECK(sup <= 5e-3);
  CHECK_THAT(sol.u(b.graph.nearest_vertex(Point{0, 0, 0})), Catch::Matchers::WithinAbs(2.0, 5e-3));
  CHECK(sol.diag.compatibility_ok);
  CHECK(sol.diag.lax_max_violation <= kFpNoiseTol);
  // compatibility holds, so the whole boundary is effective
  CHECK(sol.sigma_g.size() == 2);
}

TEST_CASE("comb Dirichlet problem: exact values and d-discontinuity at the tip") {
  const int J = 50;
  BuiltScenario b = build_comb(J);
  DirichletProblem problem(b.graph, b.field, b.g);
  const Solution sol = solve_lax(problem);
  CHECK_THAT(sol.u(comb_O()), Catch::Matchers::WithinAbs(2.0, 1e-9));
  for (int j = 2; j <= J; ++j)
    CHECK_THAT(sol.u(comb_Q(J, j)), Catch::Matchers::WithinAbs(3.0 - 1.0 / j, 1e-9));

  // boundary modulus near Q_1 vanishes linearly; far teeth keep |u| ~ 3
  const auto modulus = boundary_modulus(problem, sol, {0.05, 0.2, 2.05});
  CHECK(modulus.at(0.05) <= 0.05 + 1e-9);
  CHECK(modulus.at(2.05) >= 2.5);
}

TEST_CASE("f == 1 with the whole boundary and zero data gives u == 0") {
  DomainSpec dom;
  dom.shape = DomainSpec::Shape::Interval;
  dom.x0 = 0.0;
  dom.x1 = 1.0;
  MetricGraph base = grid_domain(dom, 0.25, 4);
  // flag everything as boundary except one interior vertex to keep the
  // proper-subset invariant
  auto vertices = base.vertices();
  for (auto& v : vertices) v.boundary = true;
  vertices[2].boundary = false;
  MetricGraph g(std::move(vertices), std::vector<Edge>(base.edges()), GraphMeta(base.meta()));
  std::map<VertexId, double> data;
  for (const auto& v : g.vertices())
    if (v.boundary) data[v.id] = 0.0;
  DirichletProblem problem(g, WeightField::constant(1.0), data);
  const Solution sol = solve_lax(problem);
  for (const auto& v : g.vertices())
    if (v.boundary) CHECK(sol.u(v.id) == 0.0);
}

TEST_CASE("compatibility: constant data pass; interval_loss pinpoints the violation") {
  BuiltScenario loss = build_interval_loss(0.05);
  DirichletProblem problem(loss.graph, loss.field, loss.g);
  const auto report = check_compatibility(problem);
  CHECK_FALSE(report.ok);
  REQUIRE_FALSE(report.violations.empty());
  const VertexId left = loss.graph.nearest_vertex(Point{0, 0, 0});
  const VertexId right = loss.graph.nearest_vertex(Point{1, 0, 0});
  CHECK(report.violations.front().x == right);
  CHECK(report.violations.front().y == left);
  CHECK_THAT(report.violations.front().excess, Catch::Matchers::WithinAbs(1.0, 1e-9));

  std::map<VertexId, double> flat = {{left, 0.5}, {right, 0.5}};
  DirichletProblem ok_problem(loss.graph, loss.field, flat);
  CHECK(check_compatibility(ok_problem).ok);
}

TEST_CASE("compatibility: optical distance to a fixed boundary vertex is 1-Lipschitz data") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    auto rg = oracles::random_graph(rng, 6);
    if (rg.graph.vertex_count() < 3) continue;  // boundary must stay a proper subset
    auto vertices = rg.graph.vertices();
    vertices[0].boundary = true;
    vertices[1].boundary = true;
    MetricGraph g(std::move(vertices), std::vector<Edge>(rg.graph.edges()),
                  GraphMeta(rg.graph.meta()));
    WeightField f = WeightField::per_edge(rg.f_per_edge, 0.5);
    const auto table = optical_from_sources(g, f, {0});
    std::map<VertexId, double> data = {{0, table.at(0)}, {1, table.at(1)}};
    DirichletProblem problem(g, f, data);
    CHECK(check_compatibility(problem).ok);
  }
}

TEST_CASE("effective boundary: loss example, compatible case, two-point inf") {
  BuiltScenario loss = build_interval_loss(0.05);
  DirichletProblem problem(loss.graph, loss.field, loss.g);
  const Solution sol = solve_lax(problem);
  const VertexId left = loss.graph.nearest_vertex(Point{0, 0, 0});
  REQUIRE(sol.sigma_g.size() == 1);
  CHECK(sol.sigma_g[0] == left);
  double sup = 0.0;
  for (const auto& v : loss.graph.vertices()) sup = std::max(sup, std::abs(sol.u(v.id) - v.pos[0]));
  CHECK(sup <= 1e-9);

  // compatible data: the whole boundary is effective
  BuiltScenario ok = build_interval_sqrt(0.05);
  DirichletProblem okp(ok.graph, ok.field, ok.g);
  CHECK(solve_lax(okp).sigma_g.size() == 2);

  // two boundary points, g = (0, 10), optical distance 1 between them
  GraphSpec spec;
  spec.vertices = {{0, Point{0, 0, 0}, true}, {1, Point{0.5, 0, 0}, false}, {2, Point{1, 0, 0}, true}};
  spec.edges = {{0, 1, 0.5, 0.0}, {1, 2, 0.5, 0.0}};
  MetricGraph g = build_graph(spec);
  DirichletProblem two(g, WeightField::constant(1.0), {{0, 0.0}, {2, 10.0}});
  const Solution sol2 = solve_lax(two);
  REQUIRE(sol2.sigma_g.size() == 1);
  CHECK(sol2.sigma_g[0] == 0);
  CHECK_THAT(sol2.u(2), Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("boundary modulus bounds for the closed forms") {
  BuiltScenario b = build_interval_sqrt(0.01);
  DirichletProblem problem(b.graph, b.field, b.g);
  const Solution sol = solve_lax(problem);
  const std::vector<double> deltas{0.05, 0.1, 0.2};
  const auto modulus = boundary_modulus(problem, sol, deltas);
  for (double d : deltas)
    CHECK(modulus.at(d) <= 2.0 * (1.0 - std::sqrt(1.0 - d)) + 1e-6);

  BuiltScenario flat = build_interval_loss(0.05);
  std::map<VertexId, double> zero;
  const VertexId l = flat.graph.nearest_vertex(Point{0, 0, 0});
  const VertexId r = flat.graph.nearest_vertex(Point{1, 0, 0});
  zero[l] = 0.0;
  zero[r] = 0.0;
  DirichletProblem fp(flat.graph, flat.field, zero);
  const Solution fsol = solve_lax(fp);
  const auto fm = boundary_modulus(fp, fsol, deltas);
  for (double d : deltas) CHECK(fm.at(d) <= d + 1e-9);
}

TEST_CASE("monotonicity in g and f; raising g off sigma_g changes nothing") {
  std::mt19937_64 rng(23);
  auto rg = oracles::random_graph(rng, 7);
  while (rg.graph.vertex_count() < 3) rg = oracles::random_graph(rng, 7);
  auto vertices = rg.graph.vertices();
  vertices[0].boundary = true;
  vertices[1].boundary = true;
  MetricGraph g(std::move(vertices), std::vector<Edge>(rg.graph.edges()),
                GraphMeta(rg.graph.meta()));
  WeightField f = WeightField::per_edge(rg.f_per_edge, 0.5);

  DirichletProblem p1(g, f, {{0, 0.0}, {1, 0.5}});
  DirichletProblem p2(g, f, {{0, 0.25}, {1, 0.75}});
  const Solution s1 = solve_lax(p1);
  const Solution s2 = solve_lax(p2);
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    CHECK(s1.table.dist[v] <= s2.table.dist[v] + kFpNoiseTol);

  auto bigger = rg.f_per_edge;
  for (auto& x : bigger) x *= 1.5;
  DirichletProblem p3(g, WeightField::per_edge(bigger, 0.5), {{0, 0.0}, {1, 0.5}});
  const Solution s3 = solve_lax(p3);
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    CHECK(s1.table.dist[v] <= s3.table.dist[v] + kFpNoiseTol);

  // interval_loss: push the lost datum higher; u stays the same
  BuiltScenario loss = build_interval_loss(0.1);
  DirichletProblem base(loss.graph, loss.field, loss.g);
  const Solution sb = solve_lax(base);
  auto raised = loss.g;
  const VertexId right = loss.graph.nearest_vertex(Point{1, 0, 0});
  raised[right] = 5.0;
  DirichletProblem rp(loss.graph, loss.field, raised);
  const Solution sr = solve_lax(rp);
  for (std::size_t v = 0; v < loss.graph.vertex_count(); ++v)
    CHECK(sb.table.dist[v] == sr.table.dist[v]);
}

TEST_CASE("comparison harness accepts shifted supersolutions") {
  BuiltScenario b = build_interval_sqrt(0.05);
  DirichletProblem problem(b.graph, b.field, b.g);
  const Solution sol = solve_lax(problem);
  auto shifted = sol.table.dist;
  for (auto& x : shifted) x += 1.0;
  // u <= u + 1 with matching boundary shift
  CHECK(comparison_check(sol.table.dist, shifted, true).pass);
}

TEST_CASE("Dirichlet validation errors") {
  BuiltScenario b = build_interval_sqrt(0.25);
  CHECK_THROWS_AS(DirichletProblem(b.graph, b.field, {}), EmptyBoundary);
  CHECK_THROWS_AS(DirichletProblem(b.graph, b.field, {{2, 0.0}}), ParseError);  // not flagged
}
