#pragma once

// A small arithmetic expression language for scalar functions of chart
// coordinates: literals, variables x1..x9 (aliases x, y, z, t), the four
// arithmetic operators, right-associative ^, unary minus, and a fixed
// function set (sin cos sinh cosh exp log sqrt pow).

#include <memory>
#include <string>
#include <vector>

#include "tbgeo/linalg.hpp"
#include "tbgeo/smooth_fn.hpp"

namespace tbg {

enum class ExprFunc { sin, cos, sinh, cosh, exp, log, sqrt, pow };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Kind { number, var, neg, add, sub, mul, div, pow, call };
  Kind kind = Kind::number;
  double number = 0.0;
  int var_index = 0;       // for Kind::var
  ExprFunc fn = ExprFunc::sin;  // for Kind::call
  std::vector<ExprPtr> kids;
};

struct Expr {
  ExprPtr root;
  explicit operator bool() const { return static_cast<bool>(root); }
};

/// Parse with standard precedence; throws ParseError with a byte offset.
Expr parse_expr(const std::string& text);

/// Fully parenthesized rendering; parse(to_string(e)) reproduces the tree.
std::string to_string(const Expr& e);

/// Structural equality.
bool expr_equal(const Expr& a, const Expr& b);

/// Largest variable index referenced, or -1 for constant expressions.
int max_var_index(const Expr& e);

namespace detail {

template <class S>
S eval_node(const ExprNode& n, const VecX<S>& p, bool univariate) {
  using Kind = ExprNode::Kind;
  switch (n.kind) {
    case Kind::number:
      return S(n.number);
    case Kind::var: {
      int idx = univariate ? 0 : n.var_index;
      if (idx >= p.size())
        throw EvalDomainError("expression refers to coordinate x" +
                              std::to_string(n.var_index + 1) +
                              " beyond the chart dimension");
      return p[idx];
    }
    case Kind::neg:
      return -eval_node(*n.kids[0], p, univariate);
    case Kind::add:
      return eval_node(*n.kids[0], p, univariate) + eval_node(*n.kids[1], p, univariate);
    case Kind::sub:
      return eval_node(*n.kids[0], p, univariate) - eval_node(*n.kids[1], p, univariate);
    case Kind::mul:
      return eval_node(*n.kids[0], p, univariate) * eval_node(*n.kids[1], p, univariate);
    case Kind::div:
      return eval_node(*n.kids[0], p, univariate) / eval_node(*n.kids[1], p, univariate);
    case Kind::pow: {
      S base = eval_node(*n.kids[0], p, univariate);
      const ExprNode& e = *n.kids[1];
      if (e.kind == Kind::number) return pow(base, e.number);
      if (e.kind == Kind::neg && e.kids[0]->kind == Kind::number)
        return pow(base, -e.kids[0]->number);
      if (real_part(base) <= 0.0)
        throw EvalDomainError("non-constant power of a non-positive base");
      return pow(base, eval_node(*n.kids[1], p, univariate));
    }
    case Kind::call: {
      if (n.fn == ExprFunc::pow) {
        S base = eval_node(*n.kids[0], p, univariate);
        const ExprNode& e = *n.kids[1];
        if (e.kind == Kind::number) return pow(base, e.number);
        if (real_part(base) <= 0.0)
          throw EvalDomainError("non-constant power of a non-positive base");
        return pow(base, eval_node(*n.kids[1], p, univariate));
      }
      S arg = eval_node(*n.kids[0], p, univariate);
      switch (n.fn) {
        case ExprFunc::sin: return sin(arg);
        case ExprFunc::cos: return cos(arg);
        case ExprFunc::sinh: return sinh(arg);
        case ExprFunc::cosh: return cosh(arg);
        case ExprFunc::exp: return exp(arg);
        case ExprFunc::log:
          if (real_part(arg) <= 0.0) throw EvalDomainError("log of a non-positive argument");
          return log(arg);
        case ExprFunc::sqrt:
          if (real_part(arg) <= 0.0) throw EvalDomainError("sqrt of a non-positive argument");
          return sqrt(arg);
        default: break;
      }
      throw EvalDomainError("unreachable function");
    }
  }
  throw EvalDomainError("unreachable node kind");
}

}  // namespace detail

/// Evaluate at a chart point.
template <class S>
S eval_expr(const Expr& e, const VecX<S>& p) {
  return detail::eval_node(*e.root, p, false);
}

/// Evaluate with every variable bound to the single coordinate t, for the
/// univariate profiles f(x), f(y), f(z).
template <class S>
S eval_expr_univariate(const Expr& e, const S& t) {
  VecX<S> p(1);
  p[0] = t;
  return detail::eval_node(*e.root, p, true);
}

/// Wrap as a differentiable scalar function of the chart point.
inline SmoothScalarFn expr_scalar_fn(const Expr& e) {
  return make_scalar_fn([e](const auto& q) { return eval_expr(e, q); });
}

/// Wrap as a univariate profile (all variables read the single coordinate).
inline SmoothScalarFn expr_univariate_fn(const Expr& e) {
  return make_scalar_fn([e](const auto& q) {
    using S = typename std::decay_t<decltype(q)>::Scalar;
    return detail::eval_node<S>(*e.root, q, true);
  });
}

}  // namespace tbg
