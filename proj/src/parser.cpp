#include "tpdde/parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>

#include "tpdde/errors.hpp"

namespace tpdde {

namespace {

using Node = ExprNode;
using NodePtr = std::unique_ptr<ExprNode>;

NodePtr make(Node::Kind kind, std::size_t pos) {
  auto n = std::make_unique<Node>();
  n->kind = kind;
  n->pos = pos;
  return n;
}

NodePtr make(Node::Kind kind, std::size_t pos, NodePtr a, NodePtr b = nullptr) {
  auto n = make(kind, pos);
  n->kids.push_back(std::move(a));
  if (b) n->kids.push_back(std::move(b));
  return n;
}

class Parser {
 public:
  Parser(std::string_view text, std::size_t arity, std::string_view alias)
      : s_(text), arity_(arity), alias_(alias) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip_ws();
    if (p_ != s_.size()) fail("unexpected '" + std::string(1, s_[p_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(p_, what); }

  void skip_ws() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }

  bool peek(char c) {
    skip_ws();
    return p_ < s_.size() && s_[p_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++p_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (p_ >= s_.size()) fail(std::string("expected '") + c + "' before end of input");
      fail(std::string("expected '") + c + "'");
    }
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      const std::size_t at = (skip_ws(), p_);
      if (accept('+')) {
        lhs = make(Node::Kind::Add, at, std::move(lhs), term());
      } else if (accept('-')) {
        lhs = make(Node::Kind::Sub, at, std::move(lhs), term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      const std::size_t at = (skip_ws(), p_);
      if (accept('*')) {
        lhs = make(Node::Kind::Mul, at, std::move(lhs), factor());
      } else if (accept('/')) {
        lhs = make(Node::Kind::Div, at, std::move(lhs), factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    const std::size_t at = (skip_ws(), p_);
    if (accept('-')) return make(Node::Kind::Neg, at, factor());
    NodePtr base = atom();
    const std::size_t caret = (skip_ws(), p_);
    if (!accept('^')) return base;
    skip_ws();
    const std::size_t start = p_;
    while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
    if (start == p_) {
      p_ = start;
      fail("exponent must be a non-negative integer literal");
    }
    if (p_ < s_.size() && (s_[p_] == '.' || s_[p_] == 'e' || s_[p_] == 'E')) {
      fail("exponent must be a non-negative integer literal");
    }
    unsigned power = 0;
    auto [end, ec] = std::from_chars(s_.data() + start, s_.data() + p_, power);
    if (ec != std::errc{} || end != s_.data() + p_) {
      p_ = start;
      fail("exponent out of range");
    }
    auto n = make(Node::Kind::Pow, caret, std::move(base));
    n->power = power;
    return n;
  }

  std::string_view ident() {
    const std::size_t start = p_;
    while (p_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[p_]))) ++p_;
    return s_.substr(start, p_ - start);
  }

  NodePtr call(Node::Kind kind, std::size_t at) {
    expect('(');
    NodePtr arg = expr();
    expect(')');
    return make(kind, at, std::move(arg));
  }

  NodePtr number(std::size_t at) {
    std::size_t q = p_;
    auto digits = [&] {
      const std::size_t d = q;
      while (q < s_.size() && std::isdigit(static_cast<unsigned char>(s_[q]))) ++q;
      return q - d;
    };
    std::size_t nd = digits();
    if (q < s_.size() && s_[q] == '.') {
      ++q;
      nd += digits();
    }
    if (nd == 0) fail("malformed number");
    if (q < s_.size() && (s_[q] == 'e' || s_[q] == 'E')) {
      std::size_t r = q + 1;
      if (r < s_.size() && (s_[r] == '+' || s_[r] == '-')) ++r;
      if (r < s_.size() && std::isdigit(static_cast<unsigned char>(s_[r]))) {
        q = r;
        digits();
      }
    }
    double v = 0.0;
    auto [end, ec] = std::from_chars(s_.data() + p_, s_.data() + q, v);
    if (ec != std::errc{} || end != s_.data() + q) fail("malformed number");
    p_ = q;
    auto n = make(Node::Kind::Number, at);
    n->number = v;
    return n;
  }

  NodePtr atom() {
    skip_ws();
    const std::size_t at = p_;
    if (p_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[p_];
    if (c == '(') {
      ++p_;
      NodePtr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number(at);
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'");

    const std::string_view id = ident();
    if (!alias_.empty() && id == alias_) {
      if (arity_ < 1) fail("variable '" + std::string(id) + "' exceeds arity 0");
      auto n = make(Node::Kind::Var, at);
      n->var = 0;
      return n;
    }
    if (id == "i") return make(Node::Kind::ImagUnit, at);
    if (id == "pi") return make(Node::Kind::Pi, at);
    if (id == "exp") return call(Node::Kind::Exp, at);
    if (id == "sqrt") return call(Node::Kind::Sqrt, at);
    if (id == "ln") return call(Node::Kind::Ln, at);
    if (id == "z") {
      const std::size_t start = p_;
      while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
      std::size_t k = 0;
      auto [end, ec] = std::from_chars(s_.data() + start, s_.data() + p_, k);
      if (start == p_ || ec != std::errc{}) {
        p_ = at;
        fail("variable name must be z followed by an index");
      }
      if (k == 0 || k > arity_) {
        p_ = at;
        fail("variable z" + std::to_string(k) + " out of range for arity " +
             std::to_string(arity_));
      }
      auto n = make(Node::Kind::Var, at);
      n->var = k - 1;
      return n;
    }
    p_ = at;
    fail("unknown identifier '" + std::string(id) + "'");
  }

  std::string_view s_;
  std::size_t p_ = 0;
  std::size_t arity_;
  std::string_view alias_;
};

std::optional<Cx> as_constant(const ExpPoly& f) {
  if (f.empty()) return Cx{};
  if (!f.is_polynomial()) return std::nullopt;
  const Poly p = f.polynomial_part();
  if (!p.is_constant()) return std::nullopt;
  return p.constant_term();
}

Cx constant_arg(const Node& n, std::size_t arity, const char* fn) {
  const auto v = as_constant(eval_ast(*n.kids[0], arity));
  if (!v) throw ParseError(n.kids[0]->pos, std::string(fn) + " needs a constant argument");
  return *v;
}

}  // namespace

std::unique_ptr<ExprNode> parse_ast(std::string_view text, std::size_t arity,
                                    std::string_view alias) {
  return Parser(text, arity, alias).parse();
}

ExpPoly eval_ast(const ExprNode& n, std::size_t arity) {
  using K = ExprNode::Kind;
  auto kid = [&](std::size_t k) { return eval_ast(*n.kids[k], arity); };
  switch (n.kind) {
    case K::Number: return ExpPoly::constant(arity, n.number);
    case K::ImagUnit: return ExpPoly::constant(arity, Cx(0.0, 1.0));
    case K::Pi: return ExpPoly::constant(arity, kPi);
    case K::Var: return ep_from_poly(Poly::variable(arity, n.var));
    case K::Add: return kid(0) + kid(1);
    case K::Sub: return kid(0) - kid(1);
    case K::Mul: return kid(0) * kid(1);
    case K::Neg: return -kid(0);
    case K::Div: {
      const auto d = as_constant(kid(1));
      if (!d) throw ParseError(n.kids[1]->pos, "divisor must be a constant");
      if (*d == Cx{}) throw ParseError(n.kids[1]->pos, "division by zero");
      return kid(0) * (1.0 / *d);
    }
    case K::Pow: {
      const ExpPoly base = kid(0);
      ExpPoly r = ExpPoly::constant(arity, 1.0);
      for (unsigned k = 0; k < n.power; ++k) r = r * base;
      return r;
    }
    case K::Exp: {
      const ExpPoly arg = kid(0);
      if (!arg.is_polynomial()) {
        throw ParseError(n.kids[0]->pos, "exp argument must be a polynomial");
      }
      try {
        return ep_exp(arg.polynomial_part());
      } catch (const EvalError& e) {
        throw ParseError(n.kids[0]->pos, e.what());
      }
    }
    case K::Sqrt: return ExpPoly::constant(arity, csqrt(constant_arg(n, arity, "sqrt")));
    case K::Ln: {
      const Cx v = constant_arg(n, arity, "ln");
      if (v == Cx{}) throw ParseError(n.kids[0]->pos, "logarithm of zero");
      return ExpPoly::constant(arity, clog(v));
    }
  }
  throw ParseError(n.pos, "unsupported node");
}

ExpPoly parse_expression(std::string_view text, std::size_t arity, std::string_view alias) {
  return eval_ast(*parse_ast(text, arity, alias), arity);
}

Poly parse_polynomial(std::string_view text, std::size_t arity, std::string_view alias) {
  const ExpPoly f = parse_expression(text, arity, alias);
  if (!f.is_polynomial()) throw ParseError(0, "expected a polynomial expression");
  return f.empty() ? Poly(arity) : f.polynomial_part();
}

Cx parse_constant(std::string_view text) {
  const auto v = as_constant(parse_expression(text, 0));
  if (!v) throw ParseError(0, "expected a constant expression");
  return *v;
}

std::string format_expression(const ExpPoly& f) {
  if (f.empty()) return "0";
  std::string out;
  for (const auto& [q, p] : f.terms()) {
    if (!out.empty()) out += " + ";
    out += p.size() == 1 ? format_poly(p) : "(" + format_poly(p) + ")";
    if (!q.is_zero()) out += "*exp(" + format_poly(q) + ")";
  }
  return out;
}

}  // namespace tpdde
