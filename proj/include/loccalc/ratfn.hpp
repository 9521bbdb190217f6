#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "loccalc/polynomial.hpp"

namespace loccalc {

/// Element of Q(t, l0, l1, ...): a reduced quotient of polynomials.
///
/// Invariants: the denominator is nonzero and monic in graded-lex order,
/// gcd(num, den) = 1, and zero is 0/1. Two equal fractions therefore have
/// identical representations and `==` compares them structurally.
class RatFn {
 public:
  RatFn() : den_(1) {}
  RatFn(const Rational& c) : num_(c), den_(1) {}      // NOLINT(google-explicit-constructor)
  RatFn(long c) : RatFn(Rational(c)) {}               // NOLINT(google-explicit-constructor)
  RatFn(int c) : RatFn(Rational(c)) {}                // NOLINT(google-explicit-constructor)
  RatFn(const SparsePoly& p) : num_(p.trimmed()), den_(1) {}  // NOLINT(google-explicit-constructor)

  /// Canonical reduced form of num/den; throws MathError("division by zero") if den = 0.
  static RatFn normalize(const SparsePoly& num, const SparsePoly& den);
  static RatFn variable(const std::string& name) { return RatFn(SparsePoly::variable(name)); }

  const SparsePoly& num() const { return num_; }
  const SparsePoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  /// Value of a constant fraction; throws MathError otherwise.
  Rational constant_value() const;
  bool is_polynomial() const { return den_.is_constant(); }

  RatFn operator-() const;
  friend RatFn operator+(const RatFn& a, const RatFn& b);
  friend RatFn operator-(const RatFn& a, const RatFn& b) { return a + (-b); }
  friend RatFn operator*(const RatFn& a, const RatFn& b);
  friend RatFn operator/(const RatFn& a, const RatFn& b);
  RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
  RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
  RatFn& operator*=(const RatFn& o) { return *this = *this * o; }
  RatFn& operator/=(const RatFn& o) { return *this = *this / o; }
  RatFn inverse() const;
  RatFn pow(std::uint32_t exponent) const;

  RatFn derivative(const std::string& var) const;
  /// Replaces `var` by `value`; throws MathError if the denominator vanishes.
  RatFn substitute(const std::string& var, const RatFn& value) const;
  std::vector<std::string> used_variables() const;

  /// Grammar-compatible text: "p" or "(p)/(q)".
  std::string to_string() const;

  friend bool operator==(const RatFn& a, const RatFn& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

 private:
  RatFn(SparsePoly num, SparsePoly den, bool) : num_(std::move(num)), den_(std::move(den)) {}
  SparsePoly num_;
  SparsePoly den_;
};

inline std::ostream& operator<<(std::ostream& os, const RatFn& f) { return os << f.to_string(); }

}  // namespace loccalc
