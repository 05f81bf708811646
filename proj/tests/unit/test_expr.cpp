#include <doctest.h>

#include <cmath>

#include "podrbf/errors.hpp"
#include "podrbf/expr.hpp"

using namespace podrbf;

namespace {

double eval(const std::string& text, double t = 0.0, std::map<std::string, double> c = {}) {
  const Vector y = (Vector(2) << 2.0, 3.0).finished();
  const Vector u = (Vector(1) << 0.5).finished();
  return Expression::compile(text, 2, 1, c)(t, y, u);
}

}  // namespace

TEST_CASE("arithmetic and precedence") {
  CHECK(eval("1 + 2 * 3") == 7.0);
  CHECK(eval("(1 + 2) * 3") == 9.0);
  CHECK(eval("2 ^ 3 ^ 2") == 512.0);
  CHECK(eval("-2 ^ 2") == -4.0);
  CHECK(eval("8 / 4 / 2") == 1.0);
  CHECK(eval("1e-3 * 1000") == doctest::Approx(1.0));
}

TEST_CASE("variables, constants and functions") {
  CHECK(eval("y1 * y2 + u1") == 6.5);
  CHECK(eval("t * 2", 1.5) == 3.0);
  CHECK(eval("g * y1", 0.0, {{"g", 0.14}}) == doctest::Approx(0.28));
  CHECK(eval("exp(0)") == 1.0);
  CHECK(eval("abs(-y2) + sqrt(4)") == 5.0);
  CHECK(eval("max(y1, y2) - min(y1, y2)") == 1.0);
  CHECK(eval("pow(y1, 3)") == 8.0);
  CHECK(eval("1 - exp(-0.635 * y1)") == doctest::Approx(1 - std::exp(-1.27)));
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(eval("y3"), ConfigError);
  CHECK_THROWS_AS(eval("u2"), ConfigError);
  CHECK_THROWS_AS(eval("foo + 1"), ConfigError);
  CHECK_THROWS_AS(eval("bar(1)"), ConfigError);
  CHECK_THROWS_AS(eval("(1 + 2"), ConfigError);
  CHECK_THROWS_AS(eval("1 +"), ConfigError);
  CHECK_THROWS_AS(eval("1 2"), ConfigError);
}
