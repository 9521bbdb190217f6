#pragma once

// Concrete syntax shared by the CLI and the model files:
//
//   expr     := term (('+' | '-') term)*
//   term     := factor (('*' | '/') factor)*
//   factor   := atom ('^' uint)?
//   atom     := rational | 'i' | ident | '(' expr ')' | '-' atom
//   rational := int ('/' uint)?
//
// Unary minus binds tighter than '^', so "-x^2" is (-x)^2. Identifiers starting
// with "λ" are read as "l" (so "λ0" and "l0" name the same weight).

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "loccalc/ratfn.hpp"

namespace loccalc {

struct Expr {
  enum class Kind { Number, Imaginary, Symbol, Negate, Add, Sub, Mul, Div, Pow };

  Kind kind = Kind::Number;
  Rational number;              // Number
  std::string name;             // Symbol
  std::uint32_t exponent = 0;   // Pow
  std::vector<Expr> children;   // Negate: 1, binary ops and Pow: 2 / 1

  static Expr make_number(Rational value);
  static Expr make_symbol(std::string name);
  static Expr make_imaginary();
  static Expr make_unary(Kind kind, Expr operand);
  static Expr make_binary(Kind kind, Expr lhs, Expr rhs);
  static Expr make_pow(Expr base, std::uint32_t exponent);

  friend bool operator==(const Expr& a, const Expr& b) = default;
};

/// Which identifiers an expression may use.
class ExprContext {
 public:
  using Predicate = std::function<bool(const std::string&)>;

  ExprContext(Predicate allows, bool imaginary, std::string description)
      : allows_(std::move(allows)), imaginary_(imaginary), description_(std::move(description)) {}

  /// Explicit symbol set, no imaginary literal.
  static ExprContext symbols(std::set<std::string> names);
  /// Weight field: t, s and l0, l1, ... (the scalar field of model files).
  static ExprContext weights();
  /// Chern classes `<prefix>1 .. <prefix>n` (prefix "c" or "g").
  static ExprContext chern(std::size_t n, const std::string& prefix = "c");
  /// Residue problems: z1 .. zn and the imaginary literal.
  static ExprContext residue(std::size_t n);

  bool allows(const std::string& name) const { return allows_(name); }
  bool allows_imaginary() const { return imaginary_; }
  const std::string& description() const { return description_; }

 private:
  Predicate allows_;
  bool imaginary_;
  std::string description_;
};

/// Parses `text`; throws ParseError (with column) on syntax errors and
/// InputError on identifiers the context does not allow.
Expr parse_expr(std::string_view text, const ExprContext& context);

/// Text that parses back to the same tree.
std::string pretty_print(const Expr& e);

/// Exact value in the weight field; throws InputError on the imaginary literal.
RatFn to_ratfn(const Expr& e);

/// Polynomial with Gaussian-rational coefficients: real + i * imag.
struct ComplexPoly {
  SparsePoly real;
  SparsePoly imag;

  friend bool operator==(const ComplexPoly&, const ComplexPoly&) = default;
};

/// Expands to a polynomial over Q(i); throws InputError on division by a non-constant.
ComplexPoly to_complex_poly(const Expr& e);

/// Convenience: parse then convert to the weight field.
RatFn parse_ratfn(std::string_view text, const ExprContext& context = ExprContext::weights());

}  // namespace loccalc
