#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "loccalc/expr.hpp"
#include "loccalc/matrix.hpp"
#include "loccalc/model.hpp"
#include "loccalc/ratfn.hpp"

namespace loccalc {

/// Polynomial Phi(c1, ..., cr) in abstract Chern classes. Class c_i has weight i;
/// an integrand over an n-dimensional space must have every term of weight n.
/// For tangent classes r = n; bundle integrands have r = rank.
class ChernPoly {
 public:
  using Exponents = std::vector<std::uint32_t>;  // (m1, ..., mn)

  ChernPoly() = default;
  /// `weight` 0 means weight = classes.
  ChernPoly(std::size_t classes, std::map<Exponents, Rational> terms, std::size_t weight = 0);

  /// Monomial c1^m1 ... cn^mn.
  static ChernPoly monomial(std::size_t classes, const Exponents& m, Rational coefficient = Rational(1));
  /// Reads a polynomial in `<prefix>1 .. <prefix>r` ("c1^2 - 2*c2"); throws InputError if
  /// the expression is not polynomial in those classes.
  static ChernPoly from_expr(const Expr& e, std::size_t classes, const std::string& prefix = "c",
                             std::size_t weight = 0);
  static ChernPoly parse(std::string_view text, std::size_t classes, const std::string& prefix = "c",
                         std::size_t weight = 0);

  std::size_t classes() const { return classes_; }
  /// Target weight (the dimension integrated over).
  std::size_t weight() const { return weight_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  /// Some term has weighted degree != weight().
  bool inhomogeneous() const;

  /// Phi(values[0], ..., values[n-1]).
  RatFn evaluate(const std::vector<RatFn>& values) const;
  std::string to_string(const std::string& prefix = "c") const;

 private:
  std::size_t classes_ = 0;
  std::size_t weight_ = 0;
  std::map<Exponents, Rational> terms_;
};

/// sum_i i * m_i for one exponent vector.
std::uint32_t weighted_degree(const ChernPoly::Exponents& m);

/// True iff every term of Phi has weighted degree weight(Phi).
bool check_weighted_degree(const ChernPoly& phi);

/// Truncated power series sum_{k<=n} a_k H^k in the hyperplane class.
class ClassSeries {
 public:
  explicit ClassSeries(std::size_t order) : coeffs_(order + 1) {}
  ClassSeries(std::size_t order, std::vector<RatFn> coefficients);

  /// (1 + H)^(n+1), the total Chern class of the tangent bundle of P^n.
  static ClassSeries tangent_pn(std::size_t n);
  /// 1 - d H, the total Chern class of O(-d).
  static ClassSeries dual_line(std::size_t n, long d);

  std::size_t order() const { return coeffs_.size() - 1; }
  const RatFn& operator[](std::size_t k) const { return coeffs_[k]; }
  const std::vector<RatFn>& coefficients() const { return coeffs_; }

  friend ClassSeries operator*(const ClassSeries& a, const ClassSeries& b);
  friend ClassSeries operator+(const ClassSeries& a, const ClassSeries& b);
  /// Multiplicative inverse; requires an invertible constant term.
  ClassSeries inverse() const;
  friend ClassSeries operator/(const ClassSeries& a, const ClassSeries& b) { return a * b.inverse(); }
  /// Degree-k part a_k H^k as a series of the same order.
  ClassSeries homogeneous_part(std::size_t k) const;

  friend bool operator==(const ClassSeries&, const ClassSeries&) = default;

 private:
  std::vector<RatFn> coeffs_;
};

/// Equivariant Chern data of an endomorphism at a fixed point: e_k of the matrix
/// and its determinant (= e_n, the top class).
struct EquivariantChern {
  std::vector<RatFn> classes;
  RatFn top;
};

EquivariantChern equivariant_chern(const SquareMatrix& endomorphism);

/// Classes of the tangent data at `p`; throws MathError on a degenerate point.
EquivariantChern equivariant_chern_at_point(const FixedPoint& p);

/// Series of total Chern class of the virtual bundle T - L* on P^n with L = O(d).
ClassSeries virtual_tangent_classes(std::size_t n, long d);

/// Integral over P^n of Phi(gamma_1, ..., gamma_n) for the virtual bundle T - O(d)*,
/// computed in the truncated series ring. Throws MathError if Phi is not of weight n.
Rational virtual_chern_numbers_pn(std::size_t n, long d, const ChernPoly& phi);

/// Integral over P^n of Phi(c_1, ..., c_n) of the tangent bundle, from the cohomology ring
/// c_k = C(n+1, k) H^k. Throws MathError if Phi is not of weight n.
Rational chern_numbers_pn(std::size_t n, const ChernPoly& phi);

}  // namespace loccalc
