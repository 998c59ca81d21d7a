#include <catch2/catch_amalgamated.hpp>

#include "eikonal/expression.hpp"

using namespace eikonal;

TEST_CASE("expression arithmetic and precedence") {
  CHECK(Expression::parse("1 + 2 * 3").eval({}) == 7.0);
  CHECK(Expression::parse("(1 + 2) * 3").eval({}) == 9.0);
  CHECK(Expression::parse("2 ^ 3 ^ 2").eval({}) == 512.0);  // right associative
  CHECK(Expression::parse("-2 ^ 2").eval({}) == -4.0);
  CHECK(Expression::parse("10 / 4").eval({}) == 2.5);
}

TEST_CASE("expression variables and functions") {
  const Expression e = Expression::parse("1 / sqrt(abs(x))");
  CHECK_THAT(e.eval({{"x", 0.25}}), Catch::Matchers::WithinAbs(2.0, 1e-12));
  CHECK_THAT(e.eval({{"x", -0.25}}), Catch::Matchers::WithinAbs(2.0, 1e-12));

  CHECK(Expression::parse("min(3, max(1, 2))").eval({}) == 2.0);
  CHECK_THAT(Expression::parse("hypot(x, y)").eval({{"x", 3.0}, {"y", 4.0}}),
             Catch::Matchers::WithinAbs(5.0, 1e-12));
  CHECK_THAT(Expression::parse("pi").eval({}), Catch::Matchers::WithinAbs(M_PI, 1e-15));
  CHECK(std::isinf(Expression::parse("inf").eval({})));
  CHECK(std::isinf(Expression::parse("1/abs(x)").eval({{"x", 0.0}})));
}

TEST_CASE("expression errors carry positions and names") {
  CHECK_THROWS_AS(Expression::parse("1 +"), ParseError);
  CHECK_THROWS_AS(Expression::parse("foo(1"), ParseError);
  CHECK_THROWS_AS(Expression::parse("1 2"), ParseError);
  CHECK_THROWS_AS(Expression::parse("nope(1)").eval({}), ParseError);
  CHECK_THROWS_AS(Expression::parse("x").eval({}), ParseError);

  try {
    Expression::parse("1 + @");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("position") != std::string::npos);
  }
}
