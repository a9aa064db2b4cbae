#include "tbgeo/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <map>

namespace tbg {
namespace {

struct Parser {
  const std::string& text;
  std::size_t pos = 0;

  explicit Parser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) { ++pos; return true; }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }

  ExprPtr make(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

  ExprPtr binary(ExprNode::Kind k, ExprPtr a, ExprPtr b) {
    ExprNode n;
    n.kind = k;
    n.kids = {std::move(a), std::move(b)};
    return make(std::move(n));
  }

  // expr := term (('+'|'-') term)*
  ExprPtr expr() {
    ExprPtr lhs = term();
    for (;;) {
      if (eat('+')) lhs = binary(ExprNode::Kind::add, lhs, term());
      else if (eat('-')) lhs = binary(ExprNode::Kind::sub, lhs, term());
      else return lhs;
    }
  }

  // term := unary (('*'|'/') unary)*
  ExprPtr term() {
    ExprPtr lhs = unary();
    for (;;) {
      if (eat('*')) lhs = binary(ExprNode::Kind::mul, lhs, unary());
      else if (eat('/')) lhs = binary(ExprNode::Kind::div, lhs, unary());
      else return lhs;
    }
  }

  // unary := '-' unary | power   (unary minus binds looser than ^)
  ExprPtr unary() {
    if (eat('-')) {
      ExprNode n;
      n.kind = ExprNode::Kind::neg;
      n.kids = {unary()};
      return make(std::move(n));
    }
    return power();
  }

  // power := primary ('^' unary)?   (right-associative)
  ExprPtr power() {
    ExprPtr base = primary();
    if (eat('^')) return binary(ExprNode::Kind::pow, base, unary());
    return base;
  }

  ExprPtr primary() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of expression");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      ExprPtr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  ExprPtr number() {
    const char* begin = text.c_str() + pos;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) fail("malformed number");
    pos += static_cast<std::size_t>(end - begin);
    ExprNode n;
    n.kind = ExprNode::Kind::number;
    n.number = v;
    return make(std::move(n));
  }

  ExprPtr identifier() {
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    std::string name = text.substr(start, pos - start);

    static const std::map<std::string, ExprFunc> funcs = {
        {"sin", ExprFunc::sin},   {"cos", ExprFunc::cos}, {"sinh", ExprFunc::sinh},
        {"cosh", ExprFunc::cosh}, {"exp", ExprFunc::exp}, {"log", ExprFunc::log},
        {"sqrt", ExprFunc::sqrt}, {"pow", ExprFunc::pow}};
    auto it = funcs.find(name);
    if (it != funcs.end()) {
      if (!eat('(')) { pos = start; fail("function '" + name + "' requires arguments"); }
      ExprNode n;
      n.kind = ExprNode::Kind::call;
      n.fn = it->second;
      n.kids.push_back(expr());
      if (it->second == ExprFunc::pow) {
        if (!eat(',')) fail("pow expects two arguments");
        n.kids.push_back(expr());
      }
      if (!eat(')')) fail("expected ')' after function arguments");
      return make(std::move(n));
    }

    int index = -1;
    if (name == "x" || name == "t") index = 0;
    else if (name == "y") index = 1;
    else if (name == "z") index = 2;
    else if (name.size() >= 2 && name[0] == 'x' &&
             std::all_of(name.begin() + 1, name.end(),
                         [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      index = std::atoi(name.c_str() + 1) - 1;
      if (index < 0) { pos = start; fail("invalid coordinate '" + name + "'"); }
    }
    if (index < 0) { pos = start; fail("unknown identifier '" + name + "'"); }
    ExprNode n;
    n.kind = ExprNode::Kind::var;
    n.var_index = index;
    return make(std::move(n));
  }
};

const char* func_name(ExprFunc f) {
  switch (f) {
    case ExprFunc::sin: return "sin";
    case ExprFunc::cos: return "cos";
    case ExprFunc::sinh: return "sinh";
    case ExprFunc::cosh: return "cosh";
    case ExprFunc::exp: return "exp";
    case ExprFunc::log: return "log";
    case ExprFunc::sqrt: return "sqrt";
    case ExprFunc::pow: return "pow";
  }
  return "?";
}

void print_node(const ExprNode& n, std::string& out) {
  using Kind = ExprNode::Kind;
  switch (n.kind) {
    case Kind::number: {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", n.number);
      out += buf;
      return;
    }
    case Kind::var:
      if (n.var_index == 0) out += "x";
      else if (n.var_index == 1) out += "y";
      else if (n.var_index == 2) out += "z";
      else out += "x" + std::to_string(n.var_index + 1);
      return;
    case Kind::neg:
      out += "(-";
      print_node(*n.kids[0], out);
      out += ")";
      return;
    case Kind::add:
    case Kind::sub:
    case Kind::mul:
    case Kind::div:
    case Kind::pow: {
      const char* op = n.kind == Kind::add   ? "+"
                       : n.kind == Kind::sub ? "-"
                       : n.kind == Kind::mul ? "*"
                       : n.kind == Kind::div ? "/"
                                             : "^";
      out += "(";
      print_node(*n.kids[0], out);
      out += op;
      print_node(*n.kids[1], out);
      out += ")";
      return;
    }
    case Kind::call:
      out += func_name(n.fn);
      out += "(";
      print_node(*n.kids[0], out);
      if (n.kids.size() > 1) {
        out += ",";
        print_node(*n.kids[1], out);
      }
      out += ")";
      return;
  }
}

bool node_equal(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprNode::Kind::number: return a.number == b.number;
    case ExprNode::Kind::var: return a.var_index == b.var_index;
    case ExprNode::Kind::call:
      if (a.fn != b.fn) return false;
      break;
    default: break;
  }
  if (a.kids.size() != b.kids.size()) return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!node_equal(*a.kids[i], *b.kids[i])) return false;
  return true;
}

int node_max_var(const ExprNode& n) {
  int best = n.kind == ExprNode::Kind::var ? n.var_index : -1;
  for (const auto& k : n.kids) best = std::max(best, node_max_var(*k));
  return best;
}

}  // namespace

Expr parse_expr(const std::string& text) {
  Parser p(text);
  ExprPtr root = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing characters after expression");
  return Expr{root};
}

std::string to_string(const Expr& e) {
  std::string out;
  print_node(*e.root, out);
  return out;
}

bool expr_equal(const Expr& a, const Expr& b) { return node_equal(*a.root, *b.root); }

int max_var_index(const Expr& e) { return node_max_var(*e.root); }

}  // namespace tbg
