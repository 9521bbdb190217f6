#include "loccalc/ratfn.hpp"

#include <algorithm>

#include "loccalc/error.hpp"

namespace loccalc {

namespace {

SparsePoly exact(const SparsePoly& a, const SparsePoly& b) {
  auto q = a.divide_exact(b);
  if (!q) throw MathError("internal: inexact division while reducing a fraction");
  return std::move(*q);
}

}  // namespace

RatFn RatFn::normalize(const SparsePoly& num, const SparsePoly& den) {
  if (den.is_zero()) throw MathError("division by zero");
  if (num.is_zero()) return RatFn();
  SparsePoly g = gcd(num, den);
  SparsePoly n = g.is_constant() ? num : exact(num, g);
  SparsePoly d = g.is_constant() ? den : exact(den, g);
  Rational lc = d.leading_coefficient();
  if (!lc.is_one()) {
    Rational inv = Rational(1) / lc;
    n = n.scaled(inv);
    d = d.scaled(inv);
  }
  return RatFn(n.trimmed(), d.trimmed(), true);
}

Rational RatFn::constant_value() const {
  if (!is_constant()) throw MathError("'" + to_string() + "' is not a constant");
  return num_.constant_value() / den_.constant_value();
}

RatFn RatFn::operator-() const { return RatFn(-num_, den_, true); }

RatFn operator+(const RatFn& a, const RatFn& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RatFn::normalize(a.num_ + b.num_, a.den_);
  if (a.is_polynomial() && b.is_polynomial()) return RatFn(a.num_ + b.num_);
  // With g = gcd(b1, b2) and b1 = g*u, b2 = g*v coprime cofactors, any common
  // factor of the new numerator and denominator divides g.
  SparsePoly g = gcd(a.den_, b.den_);
  SparsePoly u = g.is_constant() ? a.den_ : exact(a.den_, g);
  SparsePoly v = g.is_constant() ? b.den_ : exact(b.den_, g);
  SparsePoly num = a.num_ * v + b.num_ * u;
  if (num.is_zero()) return RatFn();
  SparsePoly den = u * b.den_;
  if (g.is_constant()) return RatFn(num.trimmed(), den.trimmed(), true);
  SparsePoly h = gcd(num, g);
  if (!h.is_constant()) {
    num = exact(num, h);
    den = exact(den, h);
  }
  Rational lc = den.leading_coefficient();
  if (!lc.is_one()) {
    num = num.scaled(Rational(1) / lc);
    den = den.scaled(Rational(1) / lc);
  }
  return RatFn(num.trimmed(), den.trimmed(), true);
}

RatFn operator*(const RatFn& a, const RatFn& b) {
  if (a.is_zero() || b.is_zero()) return RatFn();
  if (a.is_polynomial() && b.is_polynomial()) {
    Rational s = Rational(1) / (a.den_.constant_value() * b.den_.constant_value());
    return RatFn((a.num_ * b.num_).scaled(s).trimmed(), SparsePoly(1), true);
  }
  // Cross-cancel before multiplying: gcd(a.num, b.den) and gcd(b.num, a.den).
  SparsePoly g1 = gcd(a.num_, b.den_);
  SparsePoly g2 = gcd(b.num_, a.den_);
  SparsePoly n1 = g1.is_constant() ? a.num_ : exact(a.num_, g1);
  SparsePoly d2 = g1.is_constant() ? b.den_ : exact(b.den_, g1);
  SparsePoly n2 = g2.is_constant() ? b.num_ : exact(b.num_, g2);
  SparsePoly d1 = g2.is_constant() ? a.den_ : exact(a.den_, g2);
  SparsePoly num = n1 * n2;
  SparsePoly den = d1 * d2;
  Rational lc = den.leading_coefficient();
  if (!lc.is_one()) {
    num = num.scaled(Rational(1) / lc);
    den = den.scaled(Rational(1) / lc);
  }
  return RatFn(num.trimmed(), den.trimmed(), true);
}

RatFn RatFn::inverse() const {
  if (is_zero()) throw MathError("division by zero");
  Rational lc = num_.leading_coefficient();
  Rational inv = Rational(1) / lc;
  return RatFn(den_.scaled(inv), num_.scaled(inv), true);
}

RatFn operator/(const RatFn& a, const RatFn& b) { return a * b.inverse(); }

RatFn RatFn::pow(std::uint32_t exponent) const {
  if (exponent == 0) return RatFn(1);
  // Powers of coprime polynomials stay coprime.
  return RatFn(num_.pow(exponent), den_.pow(exponent), true);
}

RatFn RatFn::derivative(const std::string& var) const {
  SparsePoly n = num_.derivative(var) * den_ - num_ * den_.derivative(var);
  return normalize(n, den_ * den_);
}

RatFn RatFn::substitute(const std::string& var, const RatFn& value) const {
  auto subst_poly = [&](const SparsePoly& p) {
    // Horner in `var` with coefficients in the remaining variables.
    std::uint32_t degree = p.degree(var);
    if (degree == 0) return RatFn(p);
    RatFn acc;
    const auto& vars = p.variables();
    auto pos = static_cast<std::size_t>(std::find(vars.begin(), vars.end(), var) - vars.begin());
    std::vector<std::vector<SparsePoly::Term>> buckets(degree + 1);
    for (const auto& t : p.terms()) {
      SparsePoly::Term rest = t;
      rest.exponents[pos] = 0;
      buckets[t.exponents[pos]].push_back(std::move(rest));
    }
    for (std::uint32_t k = degree + 1; k-- > 0;) {
      acc = acc * value + RatFn(SparsePoly::from_terms(vars, std::move(buckets[k])));
    }
    return acc;
  };
  RatFn n = subst_poly(num_);
  RatFn d = subst_poly(den_);
  if (d.is_zero()) throw MathError("division by zero after substituting " + var);
  return n / d;
}

std::vector<std::string> RatFn::used_variables() const {
  return merge_variables(num_.used_variables(), den_.used_variables());
}

std::string RatFn::to_string() const {
  if (den_.is_constant() && den_.constant_value().is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace loccalc
