#include "tworiem/expr.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

namespace tworiem {

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make_constant(double c) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = Expr::Kind::Constant;
  n->cval = c;
  return n;
}

NodePtr make_var(int idx, std::string name) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = Expr::Kind::Var;
  n->var = idx;
  n->var_name = std::move(name);
  return n;
}

NodePtr make_unary(NodePtr child) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = Expr::Kind::Unary;
  n->lhs = std::move(child);
  return n;
}

NodePtr make_binary(Expr::BinOp op, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = Expr::Kind::Binary;
  n->bop = op;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

NodePtr make_call(Expr::Fn fn, NodePtr arg) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = Expr::Kind::Call;
  n->fn = fn;
  n->lhs = std::move(arg);
  return n;
}

bool lookup_fn(const std::string& name, Expr::Fn& out) {
  if (name == "sin") out = Expr::Fn::Sin;
  else if (name == "cos") out = Expr::Fn::Cos;
  else if (name == "exp") out = Expr::Fn::Exp;
  else if (name == "ln") out = Expr::Fn::Ln;
  else if (name == "sqrt") out = Expr::Fn::Sqrt;
  else if (name == "abs") out = Expr::Fn::Abs;
  else return false;
  return true;
}

const char* fn_name(Expr::Fn fn) {
  switch (fn) {
    case Expr::Fn::Sin: return "sin";
    case Expr::Fn::Cos: return "cos";
    case Expr::Fn::Exp: return "exp";
    case Expr::Fn::Ln: return "ln";
    case Expr::Fn::Sqrt: return "sqrt";
    case Expr::Fn::Abs: return "abs";
  }
  return "?";
}

// Recursive-descent parser tracking byte offsets for diagnostics.
class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& coords)
      : text_(text), coords_(coords) {}

  NodePtr parse() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(pos_, "expected expression");
    NodePtr e = parse_sum();
    skip_ws();
    if (pos_ < text_.size())
      throw ParseError(pos_, "unexpected trailing input");
    return e;
  }

 private:
  NodePtr parse_sum() {
    NodePtr left = parse_term();
    for (;;) {
      skip_ws();
      if (accept('+')) left = make_binary(Expr::BinOp::Add, left, parse_term());
      else if (accept('-')) left = make_binary(Expr::BinOp::Sub, left, parse_term());
      else return left;
    }
  }

  NodePtr parse_term() {
    NodePtr left = parse_unary();
    for (;;) {
      skip_ws();
      if (accept('*')) left = make_binary(Expr::BinOp::Mul, left, parse_unary());
      else if (accept('/')) left = make_binary(Expr::BinOp::Div, left, parse_unary());
      else return left;
    }
  }

  NodePtr parse_unary() {
    skip_ws();
    if (accept('-')) return make_unary(parse_unary());
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    skip_ws();
    if (accept('^')) {
      // Right associative; the exponent may carry its own unary minus.
      return make_binary(Expr::BinOp::Pow, base, parse_unary());
    }
    return base;
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(pos_, "expected operand");
    char c = text_[pos_];
    if (c == '(') {
      std::size_t open = pos_;
      ++pos_;
      NodePtr inner = parse_sum();
      skip_ws();
      if (!accept(')'))
        throw ParseError(pos_ < text_.size() ? pos_ : open,
                         "expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return parse_identifier();
    throw ParseError(pos_, std::string("unexpected character '") + c + "'");
  }

  NodePtr parse_number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-'))
        ++pos_;
      if (pos_ < text_.size() &&
          std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_])))
          ++pos_;
      } else {
        pos_ = mark;  // 'e' belongs to an identifier context, not this literal
      }
    }
    std::string lit(text_.substr(start, pos_ - start));
    if (lit == ".") throw ParseError(start, "malformed number");
    char* end = nullptr;
    double v = std::strtod(lit.c_str(), &end);
    if (end == nullptr || *end != '\0')
      throw ParseError(start, "malformed number '" + lit + "'");
    return make_constant(v);
  }

  NodePtr parse_identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_'))
      ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    Expr::Fn fn;
    if (lookup_fn(name, fn)) {
      skip_ws();
      if (!accept('(')) throw ParseError(pos_, "expected '(' after function name");
      NodePtr arg = parse_sum();
      skip_ws();
      if (!accept(')')) throw ParseError(pos_, "expected ')'");
      return make_call(fn, arg);
    }
    for (std::size_t i = 0; i < coords_.size(); ++i)
      if (coords_[i] == name)
        return make_var(static_cast<int>(i), name);
    throw UnknownIdentifier(start, name);
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  std::string_view text_;
  const std::vector<std::string>& coords_;
  std::size_t pos_ = 0;
};

void print_node(const Expr::Node& nd, std::ostringstream& out) {
  switch (nd.kind) {
    case Expr::Kind::Constant: {
      std::ostringstream tmp;
      tmp.precision(17);
      tmp << nd.cval;
      std::string s = tmp.str();
      if (!s.empty() && s[0] == '-') {
        out << "(0 - " << s.substr(1) << ")";  // keep literals unsigned
      } else {
        out << s;
      }
      return;
    }
    case Expr::Kind::Var:
      out << nd.var_name;
      return;
    case Expr::Kind::Unary:
      out << "(-";
      print_node(*nd.lhs, out);
      out << ")";
      return;
    case Expr::Kind::Binary: {
      const char* op = "+";
      switch (nd.bop) {
        case Expr::BinOp::Add: op = " + "; break;
        case Expr::BinOp::Sub: op = " - "; break;
        case Expr::BinOp::Mul: op = " * "; break;
        case Expr::BinOp::Div: op = " / "; break;
        case Expr::BinOp::Pow: op = "^"; break;
      }
      out << "(";
      print_node(*nd.lhs, out);
      out << op;
      print_node(*nd.rhs, out);
      out << ")";
      return;
    }
    case Expr::Kind::Call:
      out << fn_name(nd.fn) << "(";
      print_node(*nd.lhs, out);
      out << ")";
      return;
  }
}

}  // namespace

std::string Expr::pretty() const {
  if (!root_) return "";
  std::ostringstream out;
  print_node(*root_, out);
  return out.str();
}

Expr parse_expression(std::string_view text,
                      const std::vector<std::string>& coords) {
  if (text.empty()) throw ParseError(0, "empty expression");
  if (coords.empty() || coords.size() > kMaxDim)
    throw Error("coordinate list must have 1 to 3 names");
  Parser p(text, coords);
  return Expr(p.parse(), static_cast<int>(coords.size()));
}

}  // namespace tworiem
