#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "finsler/jet.hpp"

namespace finsler {

class SphericalMetric;
struct ProfileValue;

/// Parsed arithmetic expression over a declared set of variables.
///
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := unary ('^' factor)?
///   unary  := '-'? atom
///   atom   := number | ident | ident '(' expr ')' | '(' expr ')'
///
/// Functions: sin cos sinh cosh exp log sqrt.
class Expr {
 public:
  enum class Op { number, variable, negate, add, sub, mul, div, pow, call };
  enum class Fn { sin, cos, sinh, cosh, exp, log, sqrt };

  struct Node {
    Op op = Op::number;
    double number = 0;
    int index = 0;  // variable slot
    Fn fn = Fn::sin;
    std::shared_ptr<const Node> lhs{}, rhs{};
  };

  Expr(std::shared_ptr<const Node> root, std::vector<std::string> vars);

  const std::vector<std::string>& variables() const { return vars_; }
  const Node& root() const { return *root_; }

  /// Values in the order of variables().
  double eval(std::span<const double> values) const;
  Jet2 eval(std::span<const Jet2> values) const;

  /// Text that parses back to the same tree.
  std::string to_string() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  std::shared_ptr<const Node> root_;
  std::vector<std::string> vars_;
};

/// SyntaxError carries the byte offset of the offending character; identifiers
/// outside `vars` and the function list raise UnknownIdentifier.
Expr parse(std::string_view src, std::vector<std::string> vars);

/// phi(t, s) from an expression in t and s.
SphericalMetric metric_from_expression(std::string_view src, std::string name = "expr");

/// A profile u(a) or v(a) from an expression in a, with exact derivatives.
std::function<ProfileValue(double)> profile_from_expression(std::string_view src);

}  // namespace finsler
