#include "diracgauge/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace diracgauge::expr {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ", ";
    out += items[i];
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

SyntaxError::SyntaxError(std::size_t offset, int line, int column,
                         std::vector<std::string> expected, const std::string& found)
    : Error("syntax error at line " + std::to_string(line) + ", column " +
            std::to_string(column) + ": expected " + join(expected) + ", found " + found),
      offset_(offset),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

const char* to_string(Func f) {
  switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Sqrt: return "sqrt";
    case Func::Tanh: return "tanh";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Construction and inspection

Expr::Expr() : Expr(literal(0.0)) {}

Expr Expr::literal(double value) { return Expr(std::make_shared<const Node>(Literal{value})); }

Expr Expr::coordinate(int index) {
  if (index < 0 || index > 3) throw InvalidArgument("coordinate index out of range");
  return Expr(std::make_shared<const Node>(Coordinate{index}));
}

Expr Expr::parameter(std::string name) {
  return Expr(std::make_shared<const Node>(Parameter{std::move(name)}));
}

Expr Expr::negate(Expr operand) {
  return Expr(std::make_shared<const Node>(Negate{std::move(operand)}));
}

Expr Expr::binary(BinOp op, Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const Node>(Binary{op, std::move(lhs), std::move(rhs)}));
}

Expr Expr::power(Expr base, double exponent) {
  return Expr(std::make_shared<const Node>(Power{std::move(base), exponent}));
}

Expr Expr::call(Func func, Expr arg) {
  return Expr(std::make_shared<const Node>(Call{func, std::move(arg)}));
}

bool Expr::operator==(const Expr& other) const {
  if (node_ == other.node_) return true;
  if (node_->index() != other.node_->index()) return false;
  return std::visit(
      overloaded{
          [&](const Literal& a) { return a.value == std::get<Literal>(*other.node_).value; },
          [&](const Coordinate& a) {
            return a.index == std::get<Coordinate>(*other.node_).index;
          },
          [&](const Parameter& a) { return a.name == std::get<Parameter>(*other.node_).name; },
          [&](const Negate& a) { return a.operand == std::get<Negate>(*other.node_).operand; },
          [&](const Binary& a) {
            const auto& b = std::get<Binary>(*other.node_);
            return a.op == b.op && a.lhs == b.lhs && a.rhs == b.rhs;
          },
          [&](const Power& a) {
            const auto& b = std::get<Power>(*other.node_);
            return a.exponent == b.exponent && a.base == b.base;
          },
          [&](const Call& a) {
            const auto& b = std::get<Call>(*other.node_);
            return a.func == b.func && a.arg == b.arg;
          }},
      *node_);
}

namespace {

bool is_atomic(const Expr& e) {
  return std::holds_alternative<Literal>(e.node()) ||
         std::holds_alternative<Coordinate>(e.node()) ||
         std::holds_alternative<Parameter>(e.node()) || std::holds_alternative<Call>(e.node());
}

std::string wrap(const Expr& e) {
  if (is_atomic(e)) return e.to_string();
  return "(" + e.to_string() + ")";
}

}  // namespace

std::string Expr::to_string() const {
  return std::visit(
      overloaded{[](const Literal& a) { return format_double(a.value); },
                 [](const Coordinate& a) { return "x" + std::to_string(a.index); },
                 [](const Parameter& a) { return a.name; },
                 [](const Negate& a) { return "-" + wrap(a.operand); },
                 [](const Binary& a) {
                   static constexpr const char* ops[] = {" + ", " - ", "*", "/"};
                   return wrap(a.lhs) + ops[static_cast<int>(a.op)] + wrap(a.rhs);
                 },
                 [](const Power& a) { return wrap(a.base) + "^" + format_double(a.exponent); },
                 [](const Call& a) {
                   return std::string(expr::to_string(a.func)) + "(" + a.arg.to_string() + ")";
                 }},
      *node_);
}

bool Expr::uses_coordinate(int index) const {
  return std::visit(
      overloaded{[](const Literal&) { return false; },
                 [&](const Coordinate& a) { return a.index == index; },
                 [](const Parameter&) { return false; },
                 [&](const Negate& a) { return a.operand.uses_coordinate(index); },
                 [&](const Binary& a) {
                   return a.lhs.uses_coordinate(index) || a.rhs.uses_coordinate(index);
                 },
                 [&](const Power& a) { return a.base.uses_coordinate(index); },
                 [&](const Call& a) { return a.arg.uses_coordinate(index); }},
      *node_);
}

std::set<std::string> Expr::parameters() const {
  std::set<std::string> out;
  std::visit(overloaded{[](const Literal&) {}, [](const Coordinate&) {},
                        [&](const Parameter& a) { out.insert(a.name); },
                        [&](const Negate& a) { out.merge(a.operand.parameters()); },
                        [&](const Binary& a) {
                          out.merge(a.lhs.parameters());
                          out.merge(a.rhs.parameters());
                        },
                        [&](const Power& a) { out.merge(a.base.parameters()); },
                        [&](const Call& a) { out.merge(a.arg.parameters()); }},
             *node_);
  return out;
}

Expr Expr::bind(const Params& params) const {
  return std::visit(
      overloaded{[&](const Literal&) { return *this; }, [&](const Coordinate&) { return *this; },
                 [&](const Parameter& a) {
                   auto it = params.find(a.name);
                   return it == params.end() ? *this : literal(it->second);
                 },
                 [&](const Negate& a) { return negate(a.operand.bind(params)); },
                 [&](const Binary& a) {
                   return binary(a.op, a.lhs.bind(params), a.rhs.bind(params));
                 },
                 [&](const Power& a) { return power(a.base.bind(params), a.exponent); },
                 [&](const Call& a) { return call(a.func, a.arg.bind(params)); }},
      *node_);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string_view text;
  double number = 0.0;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Number: return "number";
    case Tok::Ident: return "identifier";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Caret: return "'^'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of input";
  }
  return "?";
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) { advance(); }

  Expr parse_all() {
    Expr e = parse_expr();
    expect(Tok::End, {describe(Tok::Plus), describe(Tok::Minus), describe(Tok::Star),
                      describe(Tok::Slash), describe(Tok::Caret), "end of input"});
    return e;
  }

 private:
  [[noreturn]] void fail(std::vector<std::string> expected) const {
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i < tok_.offset && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string found =
        tok_.kind == Tok::End ? "end of input" : "'" + std::string(tok_.text) + "'";
    throw SyntaxError(tok_.offset, line, column, std::move(expected), found);
  }

  void expect(Tok kind, std::vector<std::string> expected) {
    if (tok_.kind != kind) fail(std::move(expected));
    advance();
  }

  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    tok_ = Token{Tok::End, pos_, {}};
    if (pos_ >= src_.size()) return;
    const char c = src_[pos_];
    const std::size_t start = pos_;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double value = 0.0;
      auto res = std::from_chars(src_.data() + pos_, src_.data() + src_.size(), value);
      if (res.ec != std::errc()) {
        tok_ = Token{Tok::Number, start, src_.substr(start, 1)};
        fail({"number"});
      }
      pos_ = static_cast<std::size_t>(res.ptr - src_.data());
      tok_ = Token{Tok::Number, start, src_.substr(start, pos_ - start), value};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      tok_ = Token{Tok::Ident, start, src_.substr(start, pos_ - start)};
      return;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '/': kind = Tok::Slash; break;
      case '^': kind = Tok::Caret; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      default:
        tok_ = Token{Tok::End, start, src_.substr(start, 1)};
        fail({"number", "identifier", "operator", "'('", "')'"});
    }
    ++pos_;
    tok_ = Token{kind, start, src_.substr(start, 1)};
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    while (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
      const BinOp op = tok_.kind == Tok::Plus ? BinOp::Add : BinOp::Sub;
      advance();
      lhs = Expr::binary(op, lhs, parse_term());
    }
    return lhs;
  }

  Expr parse_term() {
    if (tok_.kind == Tok::Minus) {
      advance();
      return Expr::negate(parse_term());
    }
    return parse_product();
  }

  Expr parse_product() {
    Expr lhs = parse_power();
    while (tok_.kind == Tok::Star || tok_.kind == Tok::Slash) {
      const BinOp op = tok_.kind == Tok::Star ? BinOp::Mul : BinOp::Div;
      advance();
      lhs = Expr::binary(op, lhs, parse_operand());
    }
    return lhs;
  }

  Expr parse_operand() {
    if (tok_.kind == Tok::Minus) {
      advance();
      return Expr::negate(parse_operand());
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    while (tok_.kind == Tok::Caret) {
      advance();
      base = Expr::power(base, parse_exponent());
    }
    return base;
  }

  double parse_exponent() {
    const bool paren = tok_.kind == Tok::LParen;
    if (paren) advance();
    double sign = 1.0;
    if (tok_.kind == Tok::Minus) {
      sign = -1.0;
      advance();
    }
    if (tok_.kind != Tok::Number) fail({"number"});
    const double value = sign * tok_.number;
    advance();
    if (paren) expect(Tok::RParen, {"')'"});
    return value;
  }

  Expr parse_primary() {
    switch (tok_.kind) {
      case Tok::Number: {
        const double v = tok_.number;
        advance();
        return Expr::literal(v);
      }
      case Tok::LParen: {
        advance();
        Expr inner = parse_expr();
        expect(Tok::RParen, {"')'"});
        return inner;
      }
      case Tok::Ident: {
        const std::string_view name = tok_.text;
        for (Func f : {Func::Sin, Func::Cos, Func::Exp, Func::Log, Func::Sqrt, Func::Tanh}) {
          if (name == to_string(f)) {
            advance();
            expect(Tok::LParen, {"'('"});
            Expr arg = parse_expr();
            expect(Tok::RParen, {"')'"});
            return Expr::call(f, arg);
          }
        }
        advance();
        if (name.size() == 2 && name[0] == 'x' && name[1] >= '0' && name[1] <= '3')
          return Expr::coordinate(name[1] - '0');
        return Expr::parameter(std::string(name));
      }
      default:
        fail({"number", "identifier", "'('", "'-'"});
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token tok_{Tok::End, 0, {}};
};

}  // namespace

Expr parse(std::string_view source) { return Parser(source).parse_all(); }

// ---------------------------------------------------------------------------
// Evaluation

namespace {

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string("non-finite result in ") + what);
  return v;
}

double eval_node(const Expr& e, const Vec4& x, const Params& params) {
  return std::visit(
      overloaded{
          [](const Literal& a) { return a.value; },
          [&](const Coordinate& a) { return x[a.index]; },
          [&](const Parameter& a) {
            auto it = params.find(a.name);
            if (it == params.end()) throw UnboundParameter(a.name);
            return it->second;
          },
          [&](const Negate& a) { return -eval_node(a.operand, x, params); },
          [&](const Binary& a) {
            const double l = eval_node(a.lhs, x, params);
            const double r = eval_node(a.rhs, x, params);
            switch (a.op) {
              case BinOp::Add: return checked(l + r, "addition");
              case BinOp::Sub: return checked(l - r, "subtraction");
              case BinOp::Mul: return checked(l * r, "multiplication");
              case BinOp::Div:
                if (r == 0.0) throw DomainError("division by zero");
                return checked(l / r, "division");
            }
            return 0.0;
          },
          [&](const Power& a) {
            const double b = eval_node(a.base, x, params);
            if (b < 0.0 && a.exponent != std::floor(a.exponent))
              throw DomainError("negative base with non-integer exponent");
            if (b == 0.0 && a.exponent < 0.0) throw DomainError("zero to a negative power");
            return checked(std::pow(b, a.exponent), "power");
          },
          [&](const Call& a) {
            const double v = eval_node(a.arg, x, params);
            switch (a.func) {
              case Func::Sin: return std::sin(v);
              case Func::Cos: return std::cos(v);
              case Func::Exp: return checked(std::exp(v), "exp");
              case Func::Log:
                if (v <= 0.0) throw DomainError("log of non-positive argument");
                return std::log(v);
              case Func::Sqrt:
                if (v < 0.0) throw DomainError("sqrt of negative argument");
                return std::sqrt(v);
              case Func::Tanh: return std::tanh(v);
            }
            return 0.0;
          }},
      e.node());
}

}  // namespace

double eval(const Expr& e, const Vec4& coords, const Params& params) {
  return checked(eval_node(e, coords, params), "expression");
}

Vec4 eval_grad(const Expr& e, const Vec4& coords, const Params& params, double step) {
  Vec4 grad = Vec4::Zero();
  for (int mu = 0; mu < 4; ++mu) {
    if (!e.uses_coordinate(mu)) continue;
    const double h = step > 0.0 ? step : default_step(coords[mu]);
    Vec4 plus = coords;
    Vec4 minus = coords;
    plus[mu] += h;
    minus[mu] -= h;
    grad[mu] = (eval(e, plus, params) - eval(e, minus, params)) / (2.0 * h);
  }
  return grad;
}

}  // namespace diracgauge::expr
