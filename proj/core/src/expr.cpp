#include "mero/expr.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "mero/error.hpp"

namespace mero {

struct Expr::Node {
  Op op;
  Complex value;
  int exponent;
  std::vector<Expr> children;
};

namespace {

Complex normalize_zero(Complex c) { return {c.real() + 0.0, c.imag() + 0.0}; }

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

int precedence(Op op) {
  switch (op) {
    case Op::Add:
    case Op::Sub:
      return 1;
    case Op::Mul:
    case Op::Div:
      return 2;
    case Op::Neg:
      return 3;
    case Op::Pow:
      return 4;
    default:
      return 5;
  }
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_constant(Complex c) {
  const double re = c.real();
  const double im = c.imag();
  if (im == 0.0) return re >= 0.0 ? format_real(re) : "(" + format_real(re) + ")";
  if (re == 0.0) return im > 0.0 ? format_real(im) + "i" : "(" + format_real(im) + "i)";
  return "(" + format_real(re) + (im < 0.0 ? "-" : "+") + format_real(std::abs(im)) + "i)";
}

}  // namespace

Complex integer_power(Complex z, int n) noexcept {
  if (n == 0) return {1.0, 0.0};
  unsigned long long e = n < 0 ? static_cast<unsigned long long>(-static_cast<long long>(n))
                               : static_cast<unsigned long long>(n);
  Complex result{1.0, 0.0};
  Complex base = z;
  bool first = true;
  while (e != 0) {
    if (e & 1ULL) {
      result = first ? base : result * base;
      first = false;
    }
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return n < 0 ? Complex{1.0, 0.0} / result : result;
}

Expr::Expr() : Expr(var()) {}

Expr Expr::make(Op op, std::vector<Expr> children, Complex value, int exponent) {
  return Expr(std::make_shared<const Node>(Node{op, value, exponent, std::move(children)}));
}

Expr Expr::var() {
  static const Expr z = make(Op::Var, {});
  return z;
}

Expr Expr::constant(Complex c) { return make(Op::Const, {}, normalize_zero(c)); }

Op Expr::op() const noexcept { return node_->op; }
Complex Expr::constant_value() const noexcept { return node_->value; }
int Expr::exponent() const noexcept { return node_->exponent; }
const Expr& Expr::child(std::size_t i) const { return node_->children.at(i); }
std::size_t Expr::arity() const noexcept { return node_->children.size(); }

bool Expr::is_constant(Complex c) const noexcept {
  return node_->op == Op::Const && node_->value == c;
}

// Folding only happens when the folded value is finite so every constant
// stays printable.
Expr operator+(const Expr& a, const Expr& b) {
  if (a.op() == Op::Const && b.op() == Op::Const) {
    const Complex v = a.constant_value() + b.constant_value();
    if (finite(v)) return Expr::constant(v);
  }
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  return Expr::make(Op::Add, {a, b});
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.op() == Op::Const && b.op() == Op::Const) {
    const Complex v = a.constant_value() - b.constant_value();
    if (finite(v)) return Expr::constant(v);
  }
  if (b.is_constant(0.0)) return a;
  if (a.is_constant(0.0)) return -b;
  return Expr::make(Op::Sub, {a, b});
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.op() == Op::Const && b.op() == Op::Const) {
    const Complex v = a.constant_value() * b.constant_value();
    if (finite(v)) return Expr::constant(v);
  }
  if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr::constant(0.0);
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  return Expr::make(Op::Mul, {a, b});
}

Expr operator/(const Expr& a, const Expr& b) {
  if (a.op() == Op::Const && b.op() == Op::Const) {
    const Complex v = a.constant_value() / b.constant_value();
    if (finite(v)) return Expr::constant(v);
  }
  if (a.is_constant(0.0) && !b.is_constant(0.0)) return Expr::constant(0.0);
  if (b.is_constant(1.0)) return a;
  return Expr::make(Op::Div, {a, b});
}

Expr operator-(const Expr& a) {
  if (a.op() == Op::Const) return Expr::constant(-a.constant_value());
  if (a.op() == Op::Neg) return a.child(0);
  return Expr::make(Op::Neg, {a});
}

Expr Expr::pow(const Expr& base, int exponent) {
  if (exponent == 0) return constant(1.0);
  if (exponent == 1) return base;
  if (base.op() == Op::Const) {
    const Complex v = integer_power(base.constant_value(), exponent);
    if (finite(v)) return constant(v);
  }
  return make(Op::Pow, {base}, {}, exponent);
}

Expr Expr::unary(Op op, const Expr& a) {
  if (a.op() == Op::Const) {
    const Complex c = a.constant_value();
    const Complex v = op == Op::Exp ? std::exp(c) : op == Op::Sin ? std::sin(c) : std::cos(c);
    if (finite(v)) return constant(v);
  }
  return make(op, {a});
}

Expr Expr::exp(const Expr& a) { return unary(Op::Exp, a); }
Expr Expr::sin(const Expr& a) { return unary(Op::Sin, a); }
Expr Expr::cos(const Expr& a) { return unary(Op::Cos, a); }

Complex Expr::evaluate(Complex z) const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::Var:
      return z;
    case Op::Const:
      return n.value;
    case Op::Add:
      return n.children[0].evaluate(z) + n.children[1].evaluate(z);
    case Op::Sub:
      return n.children[0].evaluate(z) - n.children[1].evaluate(z);
    case Op::Mul:
      return n.children[0].evaluate(z) * n.children[1].evaluate(z);
    case Op::Div:
      return n.children[0].evaluate(z) / n.children[1].evaluate(z);
    case Op::Neg:
      return -n.children[0].evaluate(z);
    case Op::Pow:
      return integer_power(n.children[0].evaluate(z), n.exponent);
    case Op::Exp:
      return std::exp(n.children[0].evaluate(z));
    case Op::Sin:
      return std::sin(n.children[0].evaluate(z));
    case Op::Cos:
      return std::cos(n.children[0].evaluate(z));
  }
  return {};
}

Expr Expr::derivative() const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::Var:
      return constant(1.0);
    case Op::Const:
      return constant(0.0);
    case Op::Add:
      return n.children[0].derivative() + n.children[1].derivative();
    case Op::Sub:
      return n.children[0].derivative() - n.children[1].derivative();
    case Op::Mul: {
      const Expr& a = n.children[0];
      const Expr& b = n.children[1];
      return a.derivative() * b + a * b.derivative();
    }
    case Op::Div: {
      const Expr& a = n.children[0];
      const Expr& b = n.children[1];
      return a.derivative() / b - (a * b.derivative()) / pow(b, 2);
    }
    case Op::Neg:
      return -n.children[0].derivative();
    case Op::Pow: {
      const Expr& a = n.children[0];
      return constant(static_cast<double>(n.exponent)) * pow(a, n.exponent - 1) * a.derivative();
    }
    case Op::Exp:
      return *this * n.children[0].derivative();
    case Op::Sin:
      return cos(n.children[0]) * n.children[0].derivative();
    case Op::Cos:
      return -(sin(n.children[0]) * n.children[0].derivative());
  }
  return constant(0.0);
}

Expr Expr::substitute(const Expr& inner) const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::Var:
      return inner;
    case Op::Const:
      return *this;
    case Op::Add:
      return n.children[0].substitute(inner) + n.children[1].substitute(inner);
    case Op::Sub:
      return n.children[0].substitute(inner) - n.children[1].substitute(inner);
    case Op::Mul:
      return n.children[0].substitute(inner) * n.children[1].substitute(inner);
    case Op::Div:
      return n.children[0].substitute(inner) / n.children[1].substitute(inner);
    case Op::Neg:
      return -n.children[0].substitute(inner);
    case Op::Pow:
      return pow(n.children[0].substitute(inner), n.exponent);
    case Op::Exp:
      return exp(n.children[0].substitute(inner));
    case Op::Sin:
      return sin(n.children[0].substitute(inner));
    case Op::Cos:
      return cos(n.children[0].substitute(inner));
  }
  return *this;
}

std::string Expr::to_string() const {
  const Node& n = *node_;
  const int prec = precedence(n.op);
  auto wrap = [](const Expr& e, bool parens) {
    return parens ? "(" + e.to_string() + ")" : e.to_string();
  };
  switch (n.op) {
    case Op::Var:
      return "z";
    case Op::Const:
      return format_constant(n.value);
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
      static constexpr char symbols[] = {'+', '-', '*', '/'};
      const char sym = symbols[static_cast<int>(n.op) - static_cast<int>(Op::Add)];
      const Expr& a = n.children[0];
      const Expr& b = n.children[1];
      return wrap(a, precedence(a.op()) < prec) + sym + wrap(b, precedence(b.op()) <= prec);
    }
    case Op::Neg: {
      const Expr& a = n.children[0];
      return "-" + wrap(a, precedence(a.op()) < prec);
    }
    case Op::Pow: {
      const Expr& a = n.children[0];
      return wrap(a, precedence(a.op()) <= prec) + "^" + std::to_string(n.exponent);
    }
    case Op::Exp:
      return "exp(" + n.children[0].to_string() + ")";
    case Op::Sin:
      return "sin(" + n.children[0].to_string() + ")";
    case Op::Cos:
      return "cos(" + n.children[0].to_string() + ")";
  }
  return {};
}

std::size_t Expr::node_count() const {
  std::size_t count = 1;
  for (const Expr& c : node_->children) count += c.node_count();
  return count;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.op != y.op || x.children.size() != y.children.size()) return false;
  if (x.op == Op::Const && x.value != y.value) return false;
  if (x.op == Op::Pow && x.exponent != y.exponent) return false;
  for (std::size_t i = 0; i < x.children.size(); ++i) {
    if (!(x.children[i] == y.children[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    Expr e = expr();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message, std::size_t at) const {
    throw ParseError(message, at + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but input ended", pos_);
    if (text_[pos_] != c) fail(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = lhs + term();
      } else if (accept('-')) {
        lhs = lhs - term();
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = lhs * unary();
      } else if (accept('/')) {
        lhs = lhs / unary();
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!accept('^')) return base;
    skip_space();
    const std::size_t start = pos_;
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) fail("integer exponent expected", start);
    if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E')) {
      fail("integer exponent expected", start);
    }
    const std::string_view num = text_.substr(digits, pos_ - digits);
    if (num.size() > 9) fail("exponent too large", start);
    int n = std::stoi(std::string(num));
    return Expr::pow(base, negative ? -n : n);
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  Expr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t s = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return pos_ - s;
    };
    std::size_t count = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) fail("malformed number", start);
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;
    }
    const double value = std::strtod(std::string(text_.substr(start, pos_ - start)).c_str(), nullptr);
    if (!std::isfinite(value)) fail("number out of range", start);
    if (pos_ < text_.size() && text_[pos_] == 'i' &&
        (pos_ + 1 >= text_.size() || !ident_char(text_[pos_ + 1]))) {
      ++pos_;
      return Expr::constant({0.0, value});
    }
    return Expr::constant(value);
  }

  Expr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == '(') {
      ++pos_;
      Expr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '(') {
        Expr (*fn)(const Expr&) = nullptr;
        if (name == "exp") fn = &Expr::exp;
        else if (name == "sin") fn = &Expr::sin;
        else if (name == "cos") fn = &Expr::cos;
        else fail("unsupported function '" + std::string(name) + "'", start);
        ++pos_;
        Expr arg = expr();
        expect(')');
        return fn(arg);
      }
      if (name == "z") return Expr::var();
      if (name == "i") return Expr::constant({0.0, 1.0});
      if (name == "pi") return Expr::constant(std::numbers::pi);
      if (name == "exp" || name == "sin" || name == "cos") {
        fail("expected '(' after '" + std::string(name) + "'", pos_);
      }
      fail("unknown identifier '" + std::string(name) + "'", start);
    }
    fail("unexpected '" + std::string(1, c) + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expression(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Program

namespace {

void emit(const Expr& e, std::vector<std::pair<Op, std::pair<int, Complex>>>& out) {
  for (std::size_t i = 0; i < e.arity(); ++i) emit(e.child(i), out);
  out.push_back({e.op(), {e.op() == Op::Pow ? e.exponent() : 0,
                          e.op() == Op::Const ? e.constant_value() : Complex{}}});
}

}  // namespace

Program::Program(const Expr& e) {
  std::vector<std::pair<Op, std::pair<int, Complex>>> flat;
  emit(e, flat);
  code_.reserve(flat.size());
  std::size_t depth = 0;
  for (const auto& [op, rest] : flat) {
    code_.push_back({op, rest.first, rest.second});
    switch (op) {
      case Op::Var:
      case Op::Const:
        max_depth_ = std::max(max_depth_, ++depth);
        break;
      case Op::Add:
      case Op::Sub:
      case Op::Mul:
      case Op::Div:
        --depth;
        break;
      default:
        break;
    }
  }
}

namespace {

template <class Stack>
Complex run(const auto& code, Stack& stack, Complex z) {
  std::size_t top = 0;
  for (const auto& in : code) {
    switch (in.op) {
      case Op::Var:
        stack[top++] = z;
        break;
      case Op::Const:
        stack[top++] = in.value;
        break;
      case Op::Add:
        --top;
        stack[top - 1] = stack[top - 1] + stack[top];
        break;
      case Op::Sub:
        --top;
        stack[top - 1] = stack[top - 1] - stack[top];
        break;
      case Op::Mul:
        --top;
        stack[top - 1] = stack[top - 1] * stack[top];
        break;
      case Op::Div:
        --top;
        stack[top - 1] = stack[top - 1] / stack[top];
        break;
      case Op::Neg:
        stack[top - 1] = -stack[top - 1];
        break;
      case Op::Pow:
        stack[top - 1] = integer_power(stack[top - 1], in.exponent);
        break;
      case Op::Exp:
        stack[top - 1] = std::exp(stack[top - 1]);
        break;
      case Op::Sin:
        stack[top - 1] = std::sin(stack[top - 1]);
        break;
      case Op::Cos:
        stack[top - 1] = std::cos(stack[top - 1]);
        break;
    }
  }
  return stack[0];
}

}  // namespace

Complex Program::operator()(Complex z) const {
  if (code_.empty()) return z;
  if (max_depth_ <= 32) {
    std::array<Complex, 32> stack;
    return run(code_, stack, z);
  }
  std::vector<Complex> stack(max_depth_);
  return run(code_, stack, z);
}

}  // namespace mero
