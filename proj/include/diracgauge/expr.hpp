#pragma once

// Closed-form scalar expressions of the four coordinates x0..x3.
//
// Grammar (whitespace-insensitive):
//
//   expr     := term (('+' | '-') term)*
//   term     := '-' term | product
//   product  := power (('*' | '/') operand)*
//   operand  := '-' operand | power
//   power    := primary ('^' exponent)*
//   exponent := ['-'] NUMBER | '(' ['-'] NUMBER ')'
//   primary  := NUMBER | IDENT | FUNC '(' expr ')' | '(' expr ')'
//
// A leading minus applies to the whole product that follows it, so
// "-a*b^2" is Neg(Mul(a, Pow(b, 2))). Identifiers x0..x3 are coordinates,
// FUNC is one of sin cos exp log sqrt tanh, and any other identifier is a
// named parameter bound at evaluation time.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "diracgauge/error.hpp"
#include "diracgauge/types.hpp"

namespace diracgauge::expr {

using Params = std::map<std::string, double, std::less<>>;

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, int line, int column, std::vector<std::string> expected,
              const std::string& found);

  std::size_t offset() const { return offset_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

class UnboundParameter : public Error {
 public:
  explicit UnboundParameter(const std::string& name)
      : Error("unbound parameter '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

enum class BinOp { Add, Sub, Mul, Div };
enum class Func { Sin, Cos, Exp, Log, Sqrt, Tanh };

const char* to_string(Func f);

class Expr;

struct Literal {
  double value;
};
struct Coordinate {
  int index;
};
struct Parameter {
  std::string name;
};
struct Negate;
struct Binary;
struct Power;
struct Call;

/// Immutable expression tree. Copies share structure.
class Expr {
 public:
  using Node = std::variant<Literal, Coordinate, Parameter, Negate, Binary, Power, Call>;

  /// Literal zero.
  Expr();

  static Expr literal(double value);
  static Expr coordinate(int index);
  static Expr parameter(std::string name);
  static Expr negate(Expr operand);
  static Expr binary(BinOp op, Expr lhs, Expr rhs);
  static Expr power(Expr base, double exponent);
  static Expr call(Func func, Expr arg);

  const Node& node() const;

  /// Structural equality.
  bool operator==(const Expr& other) const;

  /// Canonical text form; parse(to_string()) reproduces the tree.
  std::string to_string() const;

  bool uses_coordinate(int index) const;
  std::set<std::string> parameters() const;

  /// Replaces every parameter present in `params` by a literal.
  Expr bind(const Params& params) const;

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Negate {
  Expr operand;
};
struct Binary {
  BinOp op;
  Expr lhs;
  Expr rhs;
};
struct Power {
  Expr base;
  double exponent;
};
struct Call {
  Func func;
  Expr arg;
};

inline const Expr::Node& Expr::node() const { return *node_; }

Expr parse(std::string_view source);

/// Evaluates at the given coordinates. Throws UnboundParameter or DomainError;
/// never returns a non-finite value.
double eval(const Expr& e, const Vec4& coords, const Params& params = {});

/// Default central-difference step for coordinate value x.
inline double default_step(double x) { return 1e-6 * std::max(1.0, std::abs(x)); }

/// Central-difference gradient. step <= 0 selects default_step per axis.
Vec4 eval_grad(const Expr& e, const Vec4& coords, const Params& params = {},
               double step = 0.0);

}  // namespace diracgauge::expr
