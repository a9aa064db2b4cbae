#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "tbgeo/expr.hpp"
#include "tbgeo/models.hpp"

using namespace tbg;

namespace {

double eval_at(const std::string& text, double x, double y) {
  VecX<double> p(2);
  p << x, y;
  return eval_expr(parse_expr(text), p);
}

ExprPtr random_tree(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 6);
  // Nonnegative literals only: "-2.5" reparses as neg(2.5), a different tree.
  std::uniform_real_distribution<double> num(0.0, 3.0);
  ExprNode n;
  switch (pick(rng)) {
    case 0:
      n.kind = ExprNode::Kind::number;
      n.number = num(rng);
      break;
    case 1:
      n.kind = ExprNode::Kind::var;
      n.var_index = static_cast<int>(rng() % 3);
      break;
    case 2:
      n.kind = ExprNode::Kind::neg;
      n.kids = {random_tree(rng, depth - 1)};
      break;
    case 3:
      n.kind = ExprNode::Kind::add;
      n.kids = {random_tree(rng, depth - 1), random_tree(rng, depth - 1)};
      break;
    case 4:
      n.kind = ExprNode::Kind::mul;
      n.kids = {random_tree(rng, depth - 1), random_tree(rng, depth - 1)};
      break;
    case 5:
      n.kind = ExprNode::Kind::div;
      n.kids = {random_tree(rng, depth - 1), random_tree(rng, depth - 1)};
      break;
    default: {
      n.kind = ExprNode::Kind::call;
      ExprFunc fns[] = {ExprFunc::sin, ExprFunc::cos, ExprFunc::sinh, ExprFunc::cosh,
                        ExprFunc::exp};
      n.fn = fns[rng() % 5];
      n.kids = {random_tree(rng, depth - 1)};
      break;
    }
  }
  return std::make_shared<const ExprNode>(std::move(n));
}

}  // namespace

TEST_CASE("precedence and associativity") {
  CHECK(eval_at("2+3*4^2", 0, 0) == doctest::Approx(50.0));
  CHECK(eval_at("2^3^2", 0, 0) == doctest::Approx(512.0));     // right-associative
  CHECK(eval_at("-2^2", 0, 0) == doctest::Approx(-4.0));       // minus binds looser
  CHECK(eval_at("(1+2)*(3-4)/2", 0, 0) == doctest::Approx(-1.5));
  CHECK(eval_at("x*y - y^2", 2.0, 3.0) == doctest::Approx(-3.0));
  CHECK(eval_at("pow(x, 3) + sqrt(y)", 2.0, 9.0) == doctest::Approx(11.0));
  CHECK(eval_at("sin(x)^2 + cos(x)^2", 0.83, 0.0) == doctest::Approx(1.0));
  CHECK(eval_at("log(exp(y))", 0.0, 1.37) == doctest::Approx(1.37));
}

TEST_CASE("variable aliases x,y,z,t and xN") {
  VecX<double> p(4);
  p << 1.0, 2.0, 3.0, 4.0;
  CHECK(eval_expr(parse_expr("x + y + z + x4"), p) == doctest::Approx(10.0));
  CHECK(eval_expr(parse_expr("t"), p) == doctest::Approx(1.0));
  CHECK(eval_expr(parse_expr("x1*x2"), p) == doctest::Approx(2.0));
  CHECK(max_var_index(parse_expr("x4 + y")) == 3);
  CHECK(max_var_index(parse_expr("2.5")) == -1);
}

TEST_CASE("round trip: print then reparse reproduces the tree") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 1000; ++i) {
    Expr e{random_tree(rng, 6)};
    Expr back = parse_expr(to_string(e));
    CHECK(expr_equal(e, back));
  }
}

TEST_CASE("parse errors carry byte offsets") {
  CHECK_THROWS_AS(parse_expr("1+*2"), ParseError);
  try {
    parse_expr("1+*2");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 2);
  }
  try {
    parse_expr("sin + 1");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 0);
  }
  CHECK_THROWS_AS(parse_expr("(1+2"), ParseError);
  CHECK_THROWS_AS(parse_expr("1+2)"), ParseError);
  CHECK_THROWS_AS(parse_expr("foo(3)"), ParseError);
  CHECK_THROWS_AS(parse_expr("pow(x)"), ParseError);
  CHECK_THROWS_AS(parse_expr(""), ParseError);
  CHECK_THROWS_AS(parse_expr("x0"), ParseError);
}

TEST_CASE("evaluation domain errors") {
  VecX<double> p(2);
  p << -1.0, 0.5;
  CHECK_THROWS_AS(eval_expr(parse_expr("log(x)"), p), EvalDomainError);
  CHECK_THROWS_AS(eval_expr(parse_expr("sqrt(x)"), p), EvalDomainError);
  CHECK_THROWS_AS(eval_expr(parse_expr("x^y"), p), EvalDomainError);
  CHECK(eval_expr(parse_expr("x^2"), p) == doctest::Approx(1.0));  // constant exponent ok
  CHECK(eval_expr(parse_expr("x^(-2)"), p) == doctest::Approx(1.0));
  VecX<double> q(1);
  q << 1.0;
  CHECK_THROWS_AS(eval_expr(parse_expr("y"), q), EvalDomainError);
}

TEST_CASE("expression functions differentiate through the dual backend") {
  SmoothScalarFn f = expr_scalar_fn(parse_expr("x^3 + sin(y)"));
  VecX<double> p(2);
  p << 2.0, 0.4;
  CHECK(partial_scalar([&](const auto& q) { return f(q); }, p, 0) == doctest::Approx(12.0));
  CHECK(partial_scalar([&](const auto& q) { return f(q); }, p, 1) ==
        doctest::Approx(std::cos(0.4)));

  SmoothScalarFn g = expr_univariate_fn(parse_expr("t^2 + sin(t)"));
  auto d = scalar_derivatives(g, 0.9);
  CHECK(d[0] == doctest::Approx(0.81 + std::sin(0.9)).epsilon(1e-13));
  CHECK(d[1] == doctest::Approx(1.8 + std::cos(0.9)).epsilon(1e-13));
  CHECK(d[2] == doctest::Approx(2.0 - std::sin(0.9)).epsilon(1e-13));
  CHECK(d[4] == doctest::Approx(std::sin(0.9)).epsilon(1e-12));
}

TEST_CASE("expression path agrees with the built-in families") {
  // nil3 profile family against the same profile written as text.
  FieldFamilySpec lam;
  lam.id = "nil3-e1";
  lam.profiles = {make_scalar_fn([](const auto& q) {
    using S = typename std::decay_t<decltype(q)>::Scalar;
    return sin(q[0]) + q[0] * q[0];
  })};
  FieldFamilySpec txt = lam;
  txt.profiles = {expr_univariate_fn(parse_expr("sin(t) + t^2"))};
  VectorField a = field_family(lam), b = field_family(txt);

  FieldFamilySpec fam;
  fam.id = "r2-biharmonic";
  fam.reals = {1.0, 0.5, -0.25, 1.0, 1.0, 0.0, 1.0};
  VectorField c = field_family(fam);
  Expr c0 = parse_expr("((1 + (-0.25)*x)*cosh(x) + (0.5 + x)*sinh(x)) * cos(y)");
  Expr c1 = parse_expr("((1 + (-0.25)*x)*cos(x) + (0.5 + x)*sin(x)) * cosh(y)");

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 25; ++k) {
    VecX<double> p3(3);
    p3 << u(rng), u(rng), u(rng);
    VecX<double> av = a(p3), bv = b(p3);
    for (int i = 0; i < 3; ++i) CHECK(av[i] == doctest::Approx(bv[i]).epsilon(1e-12));

    VecX<double> p2 = p3.head(2);
    VecX<double> cv = c(p2);
    CHECK(cv[0] == doctest::Approx(eval_expr(c0, p2)).epsilon(1e-12));
    CHECK(cv[1] == doctest::Approx(eval_expr(c1, p2)).epsilon(1e-12));
  }
}

TEST_CASE("printer renders numbers at full precision") {
  Expr e = parse_expr("0.1");
  Expr back = parse_expr(to_string(e));
  CHECK(expr_equal(e, back));
  CHECK(eval_at(to_string(parse_expr("1/3")), 0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
}
