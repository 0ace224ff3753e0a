#include "finsler/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>

#include "finsler/csv.hpp"
#include "finsler/normalform.hpp"
#include "finsler/spherical.hpp"

namespace finsler {

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;
using Op = Expr::Op;
using Fn = Expr::Fn;

constexpr std::array<std::pair<std::string_view, Fn>, 7> kFunctions{{{"sin", Fn::sin},
                                                                     {"cos", Fn::cos},
                                                                     {"sinh", Fn::sinh},
                                                                     {"cosh", Fn::cosh},
                                                                     {"exp", Fn::exp},
                                                                     {"log", Fn::log},
                                                                     {"sqrt", Fn::sqrt}}};

std::string_view fn_name(Fn f) {
  for (const auto& [name, fn] : kFunctions) {
    if (fn == f) return name;
  }
  return "";
}

NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

class Parser {
 public:
  Parser(std::string_view src, const std::vector<std::string>& vars) : src_(src), vars_(vars) {}

  NodePtr run() {
    skip();
    if (pos_ == src_.size()) throw SyntaxError("empty expression", pos_);
    NodePtr e = expr();
    skip();
    if (pos_ != src_.size()) throw SyntaxError(std::string("unexpected '") + src_[pos_] + "'", pos_);
    return e;
  }

 private:
  std::string_view src_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make({.op = Op::add, .lhs = lhs, .rhs = term()});
      } else if (accept('-')) {
        lhs = make({.op = Op::sub, .lhs = lhs, .rhs = term()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = make({.op = Op::mul, .lhs = lhs, .rhs = factor()});
      } else if (accept('/')) {
        lhs = make({.op = Op::div, .lhs = lhs, .rhs = factor()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    NodePtr base = unary();
    if (accept('^')) return make({.op = Op::pow, .lhs = base, .rhs = factor()});
    return base;
  }

  NodePtr unary() {
    if (accept('-')) return make({.op = Op::negate, .lhs = atom()});
    return atom();
  }

  NodePtr atom() {
    skip();
    if (pos_ == src_.size()) throw SyntaxError("unexpected end of input", pos_);
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      skip();
      if (!accept(')')) throw SyntaxError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw SyntaxError(std::string("unexpected '") + c + "'", pos_);
  }

  NodePtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t from = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      return pos_ - from;
    };
    std::size_t n = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) throw SyntaxError("malformed number", start);
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) throw SyntaxError("malformed exponent", pos_);
    }
    double value = 0.0;
    const auto res = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (res.ec != std::errc() || res.ptr != src_.data() + pos_) throw SyntaxError("malformed number", start);
    return make({.op = Op::number, .number = value});
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
    const std::string_view name = src_.substr(start, pos_ - start);
    skip();
    const bool call = pos_ < src_.size() && src_[pos_] == '(';
    if (call) {
      for (const auto& [fname, fn] : kFunctions) {
        if (fname == name) {
          ++pos_;
          NodePtr arg = expr();
          if (!accept(')')) throw SyntaxError("expected ')'", pos_);
          return make({.op = Op::call, .fn = fn, .lhs = arg});
        }
      }
      throw UnknownIdentifier(std::string(name), start);
    }
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i] == name) return make({.op = Op::variable, .index = static_cast<int>(i)});
    }
    for (const auto& [fname, fn] : kFunctions) {
      if (fname == name) throw SyntaxError("expected '(' after " + std::string(name), pos_);
    }
    throw UnknownIdentifier(std::string(name), start);
  }
};

template <class T>
T apply(Fn f, const T& x) {
  using std::cos, std::cosh, std::exp, std::log, std::sin, std::sinh, std::sqrt;
  switch (f) {
    case Fn::sin: return sin(x);
    case Fn::cos: return cos(x);
    case Fn::sinh: return sinh(x);
    case Fn::cosh: return cosh(x);
    case Fn::exp: return exp(x);
    case Fn::log: return log(x);
    case Fn::sqrt: return sqrt(x);
  }
  return x;
}

double power(double a, double b) { return std::pow(a, b); }
Jet2 power(const Jet2& a, const Jet2& b) { return pow(a, b); }

template <class T>
T evaluate(const Node& n, std::span<const T> values) {
  switch (n.op) {
    case Op::number: return T(n.number);
    case Op::variable: return values[static_cast<std::size_t>(n.index)];
    case Op::negate: return -evaluate(*n.lhs, values);
    case Op::add: return evaluate(*n.lhs, values) + evaluate(*n.rhs, values);
    case Op::sub: return evaluate(*n.lhs, values) - evaluate(*n.rhs, values);
    case Op::mul: return evaluate(*n.lhs, values) * evaluate(*n.rhs, values);
    case Op::div: return evaluate(*n.lhs, values) / evaluate(*n.rhs, values);
    case Op::pow: return power(evaluate(*n.lhs, values), evaluate(*n.rhs, values));
    case Op::call: return apply(n.fn, evaluate(*n.lhs, values));
  }
  return T(0.0);
}

bool is_atom(const Node& n) { return n.op == Op::number || n.op == Op::variable || n.op == Op::call; }

std::string print(const Node& n, const std::vector<std::string>& vars);

std::string wrap(const Node& n, const std::vector<std::string>& vars, bool parens) {
  return parens ? "(" + print(n, vars) + ")" : print(n, vars);
}

std::string print(const Node& n, const std::vector<std::string>& vars) {
  switch (n.op) {
    case Op::number: return csv::format(n.number);
    case Op::variable: return vars[static_cast<std::size_t>(n.index)];
    case Op::call: return std::string(fn_name(n.fn)) + "(" + print(*n.lhs, vars) + ")";
    case Op::negate: return "-" + wrap(*n.lhs, vars, !is_atom(*n.lhs));
    case Op::pow: {
      const bool lp = !(is_atom(*n.lhs) || n.lhs->op == Op::negate);
      const bool rp = !(is_atom(*n.rhs) || n.rhs->op == Op::negate || n.rhs->op == Op::pow);
      return wrap(*n.lhs, vars, lp) + "^" + wrap(*n.rhs, vars, rp);
    }
    case Op::mul:
    case Op::div: {
      const bool lp = n.lhs->op == Op::add || n.lhs->op == Op::sub;
      const bool rp = !(is_atom(*n.rhs) || n.rhs->op == Op::negate || n.rhs->op == Op::pow);
      return wrap(*n.lhs, vars, lp) + (n.op == Op::mul ? "*" : "/") + wrap(*n.rhs, vars, rp);
    }
    case Op::add:
    case Op::sub: {
      const bool rp = n.rhs->op == Op::add || n.rhs->op == Op::sub;
      return print(*n.lhs, vars) + (n.op == Op::add ? "+" : "-") + wrap(*n.rhs, vars, rp);
    }
  }
  return "";
}

bool same(const Node& a, const Node& b) {
  if (a.op != b.op) return false;
  switch (a.op) {
    case Op::number: return a.number == b.number;
    case Op::variable: return a.index == b.index;
    case Op::call: return a.fn == b.fn && same(*a.lhs, *b.lhs);
    case Op::negate: return same(*a.lhs, *b.lhs);
    default: return same(*a.lhs, *b.lhs) && same(*a.rhs, *b.rhs);
  }
}

}  // namespace

Expr::Expr(std::shared_ptr<const Node> root, std::vector<std::string> vars)
    : root_(std::move(root)), vars_(std::move(vars)) {}

double Expr::eval(std::span<const double> values) const {
  if (values.size() != vars_.size()) throw DomainError("wrong number of variable values");
  const double out = evaluate(*root_, values);
  if (!std::isfinite(out)) throw NonFiniteError("expression '" + to_string() + "' is not finite here");
  return out;
}

Jet2 Expr::eval(std::span<const Jet2> values) const {
  if (values.size() != vars_.size()) throw DomainError("wrong number of variable values");
  return evaluate(*root_, values);
}

std::string Expr::to_string() const { return print(*root_, vars_); }

bool operator==(const Expr& a, const Expr& b) { return a.vars_ == b.vars_ && same(*a.root_, *b.root_); }

Expr parse(std::string_view src, std::vector<std::string> vars) {
  Parser p(src, vars);
  NodePtr root = p.run();
  return Expr(std::move(root), std::move(vars));
}

SphericalMetric metric_from_expression(std::string_view src, std::string name) {
  const Expr e = parse(src, {"t", "s"});
  return SphericalMetric(
      std::move(name),
      [e](const Jet2& t, const Jet2& s) {
        const std::array<Jet2, 2> v{t, s};
        return e.eval(std::span<const Jet2>(v));
      },
      [e](double t, double s) {
        const std::array<double, 2> v{t, s};
        return e.eval(std::span<const double>(v));
      });
}

std::function<ProfileValue(double)> profile_from_expression(std::string_view src) {
  const Expr e = parse(src, {"a"});
  return [e](double a) {
    const std::array<Jet2, 1> v{Jet2::variable_t(a)};
    const Jet2 j = e.eval(std::span<const Jet2>(v));
    if (!j.all_finite()) throw NonFiniteError("profile '" + e.to_string() + "' is not finite at a = " + std::to_string(a));
    return ProfileValue{j.value(), j.partial(1, 0), j.partial(2, 0)};
  };
}

}  // namespace finsler
