#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "tworiem/geometry.hpp"
#include "tworiem/jet.hpp"

namespace tworiem {

// Immutable expression tree over a declared coordinate list. Evaluation is
// templated on the scalar ring, so the same tree yields plain values or
// (nested) jets depending on the environment it is fed.
class Expr {
 public:
  enum class Kind { Constant, Var, Unary, Binary, Call };
  enum class BinOp { Add, Sub, Mul, Div, Pow };
  enum class Fn { Sin, Cos, Exp, Ln, Sqrt, Abs };

  struct Node {
    Kind kind;
    double cval = 0.0;          // Constant
    int var = -1;               // Var: index into the coordinate list
    std::string var_name;       // Var: for printing
    BinOp bop = BinOp::Add;     // Binary
    Fn fn = Fn::Sin;            // Call
    std::shared_ptr<const Node> lhs, rhs;  // Unary uses lhs only
  };

  Expr() = default;
  explicit Expr(std::shared_ptr<const Node> root, int dim)
      : root_(std::move(root)), dim_(dim) {}

  bool empty() const { return root_ == nullptr; }
  int dimension() const { return dim_; }
  const std::shared_ptr<const Node>& root() const { return root_; }

  template <class S>
  S evaluate(const Vec<S>& env) const {
    if (!root_) throw Error("evaluate: empty expression");
    return eval_node<S>(*root_, env);
  }

  // Fully parenthesized rendering; re-parsing it reproduces the tree.
  std::string pretty() const;

 private:
  template <class S>
  static S eval_node(const Node& nd, const Vec<S>& env) {
    switch (nd.kind) {
      case Kind::Constant:
        return ring::constant<S>(nd.cval);
      case Kind::Var:
        return env[nd.var];
      case Kind::Unary:
        return -eval_node<S>(*nd.lhs, env);
      case Kind::Binary: {
        if (nd.bop == Expr::BinOp::Pow) return eval_pow<S>(nd, env);
        S a = eval_node<S>(*nd.lhs, env);
        S b = eval_node<S>(*nd.rhs, env);
        switch (nd.bop) {
          case BinOp::Add: return a + b;
          case BinOp::Sub: return a - b;
          case BinOp::Mul: return a * b;
          case BinOp::Div: return a * recip(b);
          default: break;
        }
        break;
      }
      case Kind::Call: {
        S a = eval_node<S>(*nd.lhs, env);
        switch (nd.fn) {
          case Fn::Sin: return sin(a);
          case Fn::Cos: return cos(a);
          case Fn::Exp: return exp(a);
          case Fn::Ln: return ln(a);
          case Fn::Sqrt: return sqrt_checked(a);
          case Fn::Abs: return abs_val(a);
        }
        break;
      }
    }
    throw Error("evaluate: corrupt expression node");
  }

  template <class S>
  static S eval_pow(const Node& nd, const Vec<S>& env) {
    S base = eval_node<S>(*nd.lhs, env);
    // Constant integer exponents need no positivity assumption.
    const Node* e = nd.rhs.get();
    bool neg = false;
    if (e->kind == Kind::Unary) {
      neg = true;
      e = e->lhs.get();
    }
    if (e->kind == Kind::Constant) {
      double ev = e->cval;
      if (ev == std::floor(ev) && std::fabs(ev) < 1e9) {
        long long n = static_cast<long long>(ev);
        return powi(base, neg ? -n : n);
      }
    }
    S expo = eval_node<S>(*nd.rhs, env);
    return pow_general(base, expo);
  }

  std::shared_ptr<const Node> root_;
  int dim_ = 0;
};

// Parses `text` against the declared coordinate names. Precedence, tightest
// first: `^` (right associative), unary minus, `*` `/`, `+` `-`. Functions:
// sin cos exp ln sqrt abs. See docs/expression-grammar.md.
Expr parse_expression(std::string_view text,
                      const std::vector<std::string>& coords);

}  // namespace tworiem
