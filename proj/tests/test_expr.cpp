#include <doctest.h>

#include <cmath>
#include <random>

#include "diracgauge/expr.hpp"

using namespace diracgauge;
using expr::Expr;

namespace {

Expr random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 6 : 2);
  std::uniform_int_distribution<int> coord(0, 3);
  std::uniform_real_distribution<double> value(0.0, 5.0);
  switch (pick(rng)) {
    case 0: return Expr::literal(std::round(value(rng) * 100) / 100);
    case 1: return Expr::coordinate(coord(rng));
    case 2: return Expr::parameter(coord(rng) % 2 ? "a" : "omega");
    case 3: return Expr::negate(random_expr(rng, depth - 1));
    case 4: {
      const auto op = static_cast<expr::BinOp>(std::uniform_int_distribution<int>(0, 3)(rng));
      return Expr::binary(op, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    }
    case 5: {
      const double e = std::uniform_int_distribution<int>(-3, 3)(rng) * 0.5;
      return Expr::power(random_expr(rng, depth - 1), e);
    }
    default: {
      const auto f = static_cast<expr::Func>(std::uniform_int_distribution<int>(0, 5)(rng));
      return Expr::call(f, random_expr(rng, depth - 1));
    }
  }
}

}  // namespace

TEST_CASE("arithmetic and precedence") {
  const Vec4 X(1.0, 2.0, 3.0, 4.0);
  CHECK(expr::eval(expr::parse("1 + 2*3"), X) == 7.0);
  CHECK(expr::eval(expr::parse("2^3^2"), X) == doctest::Approx(std::pow(std::pow(2, 3), 2)));
  CHECK(expr::eval(expr::parse("x1*x2 - x3/x0"), X) == 2.0);
  CHECK(expr::eval(expr::parse("-x1^2"), X) == -4.0);
  CHECK(expr::eval(expr::parse("x1^-1"), X) == 0.5);
  CHECK(expr::eval(expr::parse("sin(x0)^2 + cos(x0)^2"), X) == doctest::Approx(1.0));
  CHECK(expr::eval(expr::parse("a*tanh(x1)"), X, {{"a", 2.0}}) ==
        doctest::Approx(2 * std::tanh(2.0)));
}

TEST_CASE("leading minus binds the whole product") {
  const Expr e = expr::parse("-a*b^2");
  const auto* neg = std::get_if<expr::Negate>(&e.node());
  REQUIRE(neg != nullptr);
  CHECK(std::holds_alternative<expr::Binary>(neg->operand.node()));
  CHECK(expr::eval(e, Vec4::Zero(), {{"a", 3.0}, {"b", 2.0}}) == -12.0);
}

TEST_CASE("syntax errors carry a position") {
  try {
    expr::parse("1 + * x1");
    FAIL("expected a syntax error");
  } catch (const expr::SyntaxError& e) {
    CHECK(e.offset() == 4);
    CHECK(e.line() == 1);
    CHECK(e.column() == 5);
    CHECK_FALSE(e.expected().empty());
  }
  CHECK_THROWS_AS(expr::parse("sin x1"), expr::SyntaxError);
  CHECK_THROWS_AS(expr::parse("(x1"), expr::SyntaxError);
  CHECK_THROWS_AS(expr::parse("2 x1"), expr::SyntaxError);
  CHECK_THROWS_AS(expr::parse(""), expr::SyntaxError);
}

TEST_CASE("evaluation errors") {
  CHECK_THROWS_AS(expr::eval(expr::parse("k*x1"), Vec4::Zero()), expr::UnboundParameter);
  CHECK_THROWS_AS(expr::eval(expr::parse("log(x1)"), Vec4::Zero()), expr::DomainError);
  CHECK_THROWS_AS(expr::eval(expr::parse("1/x1"), Vec4::Zero()), expr::DomainError);
  CHECK_THROWS_AS(expr::eval(expr::parse("sqrt(x1 - 1)"), Vec4::Zero()), expr::DomainError);
  CHECK(expr::eval(expr::parse("sqrt(x1)"), Vec4::Zero()) == 0.0);
  CHECK_THROWS_AS(expr::eval(expr::parse("exp(x1)"), Vec4(0, 1000, 0, 0)), expr::DomainError);
}

TEST_CASE("round trip through the canonical text form") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const Expr e = random_expr(rng, 4);
    const std::string text = e.to_string();
    CAPTURE(text);
    CHECK(expr::parse(text) == e);
    CHECK(expr::parse(text).to_string() == text);
  }
}

TEST_CASE("binding and parameter discovery") {
  const Expr e = expr::parse("omega*x2 + m/x1");
  CHECK(e.parameters() == std::set<std::string>{"m", "omega"});
  CHECK(e.uses_coordinate(1));
  CHECK_FALSE(e.uses_coordinate(0));
  const Expr bound = e.bind({{"omega", 2.0}});
  CHECK(bound.parameters() == std::set<std::string>{"m"});
  CHECK(expr::eval(bound, Vec4(0, 1, 3, 0), {{"m", 1.0}}) == 7.0);
}

TEST_CASE("gradient matches the analytic derivative") {
  const Expr e = expr::parse("x0^2*sin(x1) + exp(x3)");
  const Vec4 X(0.7, 0.4, -1.2, 0.3);
  const Vec4 g = expr::eval_grad(e, X);
  CHECK(g[0] == doctest::Approx(2 * 0.7 * std::sin(0.4)).epsilon(1e-8));
  CHECK(g[1] == doctest::Approx(0.49 * std::cos(0.4)).epsilon(1e-8));
  CHECK(g[2] == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(g[3] == doctest::Approx(std::exp(0.3)).epsilon(1e-8));
}
