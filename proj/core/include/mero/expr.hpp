#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mero/sphere.hpp"

namespace mero {

enum class Op : std::uint8_t { Var, Const, Add, Sub, Mul, Div, Neg, Pow, Exp, Sin, Cos };

/// Immutable expression tree over z, complex literals, + - * /, integer
/// powers, exp, sin and cos. Copies share structure.
///
/// Constructors fold constant subtrees and drop trivial identities
/// (x*1, x+0, ...), so two trees that print identically evaluate
/// bit-identically.
class Expr {
 public:
  /// The variable z.
  Expr();

  static Expr var();
  static Expr constant(Complex c);

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  static Expr pow(const Expr& base, int exponent);
  static Expr exp(const Expr& a);
  static Expr sin(const Expr& a);
  static Expr cos(const Expr& a);

  Op op() const noexcept;
  /// Literal value; only meaningful for Op::Const.
  Complex constant_value() const noexcept;
  /// Integer exponent; only meaningful for Op::Pow.
  int exponent() const noexcept;
  /// Children: one for unary nodes and Pow, two for binary nodes.
  const Expr& child(std::size_t i) const;
  std::size_t arity() const noexcept;

  bool is_constant(Complex c) const noexcept;

  /// Direct recursive evaluation. Division by zero and overflow follow IEEE.
  Complex evaluate(Complex z) const;

  /// Symbolic d/dz.
  Expr derivative() const;

  /// Replaces every occurrence of z by `inner`.
  Expr substitute(const Expr& inner) const;

  /// Canonical text. Parsing it yields a tree that prints identically.
  std::string to_string() const;

  std::size_t node_count() const;

  /// Structural equality.
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Expr make(Op op, std::vector<Expr> children, Complex value = {}, int exponent = 0);
  static Expr unary(Op op, const Expr& a);

  std::shared_ptr<const Node> node_;
};

/// Parses expression text. Grammar:
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' ['+' | '-'] digits)?
///   primary := number ['i'] | 'i' | 'z' | 'pi'
///            | ('exp' | 'sin' | 'cos') '(' expr ')' | '(' expr ')'
///
/// Throws ParseError with a 1-based position.
Expr parse_expression(std::string_view text);

/// Flat postfix form of an Expr for fast repeated evaluation. Produces
/// bit-identical results to Expr::evaluate.
class Program {
 public:
  Program() = default;
  explicit Program(const Expr& e);

  Complex operator()(Complex z) const;

  std::size_t size() const noexcept { return code_.size(); }

 private:
  struct Instr {
    Op op;
    int exponent;
    Complex value;
  };
  std::vector<Instr> code_;
  std::size_t max_depth_ = 0;
};

/// z^n for integer n by binary powering; n < 0 gives 1 / z^|n|.
Complex integer_power(Complex z, int n) noexcept;

}  // namespace mero
