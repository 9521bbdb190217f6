#include "loccalc/chern.hpp"

#include <sstream>

#include "loccalc/error.hpp"

namespace loccalc {

std::uint32_t weighted_degree(const ChernPoly::Exponents& m) {
  std::uint32_t w = 0;
  for (std::size_t i = 0; i < m.size(); ++i) w += static_cast<std::uint32_t>(i + 1) * m[i];
  return w;
}

ChernPoly::ChernPoly(std::size_t classes, std::map<Exponents, Rational> terms, std::size_t weight)
    : classes_(classes), weight_(weight == 0 ? classes : weight) {
  for (auto& [m, c] : terms) {
    if (m.size() != classes) {
      throw MathError("Chern monomial has " + std::to_string(m.size()) + " exponents, expected " +
                      std::to_string(classes));
    }
    if (!c.is_zero()) terms_.emplace(m, c);
  }
}

ChernPoly ChernPoly::monomial(std::size_t classes, const Exponents& m, Rational coefficient) {
  return ChernPoly(classes, {{m, std::move(coefficient)}});
}

bool ChernPoly::inhomogeneous() const { return !check_weighted_degree(*this); }

ChernPoly ChernPoly::from_expr(const Expr& e, std::size_t n, const std::string& prefix, std::size_t weight) {
  RatFn f = to_ratfn(e);
  if (!f.is_polynomial()) throw InputError("Chern polynomial must not divide by classes");
  const SparsePoly& p = f.num();
  std::vector<std::size_t> index;
  for (const auto& v : p.variables()) {
    if (v.size() <= prefix.size() || v.compare(0, prefix.size(), prefix) != 0) {
      throw InputError("'" + v + "' is not a class " + prefix + "1.." + prefix + std::to_string(n));
    }
    std::size_t k = std::stoul(v.substr(prefix.size()));
    if (k < 1 || k > n) throw InputError("class '" + v + "' exceeds dimension " + std::to_string(n));
    index.push_back(k - 1);
  }
  std::map<Exponents, Rational> terms;
  for (const auto& t : p.terms()) {
    Exponents m(n, 0);
    for (std::size_t k = 0; k < index.size(); ++k) m[index[k]] = t.exponents[k];
    terms[m] += t.coefficient;
  }
  return ChernPoly(n, std::move(terms), weight);
}

ChernPoly ChernPoly::parse(std::string_view text, std::size_t n, const std::string& prefix, std::size_t weight) {
  return from_expr(parse_expr(text, ExprContext::chern(n, prefix)), n, prefix, weight);
}

RatFn ChernPoly::evaluate(const std::vector<RatFn>& values) const {
  if (values.size() != classes_) {
    throw MathError("Chern polynomial needs " + std::to_string(classes_) + " class values");
  }
  // Powers are shared across terms.
  std::vector<std::vector<RatFn>> powers(classes_);
  RatFn total;
  for (const auto& [m, c] : terms_) {
    RatFn term(c);
    for (std::size_t i = 0; i < classes_; ++i) {
      if (m[i] == 0) continue;
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(RatFn(1));
      while (cache.size() <= m[i]) cache.push_back(cache.back() * values[i]);
      term *= cache[m[i]];
    }
    total += term;
  }
  return total;
}

std::string ChernPoly::to_string(const std::string& prefix) const {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= classes_; ++i) names.push_back(prefix + std::to_string(i));
  std::vector<SparsePoly::Term> ts;
  for (const auto& [m, c] : terms_) ts.push_back({m, c});
  return SparsePoly::from_terms(names, ts).to_string();
}

bool check_weighted_degree(const ChernPoly& phi) {
  for (const auto& [m, c] : phi.terms()) {
    if (weighted_degree(m) != phi.weight()) return false;
  }
  return true;
}

ClassSeries::ClassSeries(std::size_t order, std::vector<RatFn> coefficients) : coeffs_(std::move(coefficients)) {
  coeffs_.resize(order + 1);
}

ClassSeries ClassSeries::tangent_pn(std::size_t n) {
  ClassSeries one_plus_h(n, {RatFn(1), RatFn(1)});
  ClassSeries result(n, {RatFn(1)});
  for (std::size_t k = 0; k <= n; ++k) result = result * one_plus_h;
  return result;
}

ClassSeries ClassSeries::dual_line(std::size_t n, long d) { return ClassSeries(n, {RatFn(1), RatFn(-d)}); }

ClassSeries operator*(const ClassSeries& a, const ClassSeries& b) {
  std::size_t n = std::min(a.order(), b.order());
  ClassSeries out(n);
  for (std::size_t i = 0; i <= n; ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; i + j <= n; ++j) out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return out;
}

ClassSeries operator+(const ClassSeries& a, const ClassSeries& b) {
  std::size_t n = std::min(a.order(), b.order());
  ClassSeries out(n);
  for (std::size_t i = 0; i <= n; ++i) out.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
  return out;
}

ClassSeries ClassSeries::inverse() const {
  if (coeffs_[0].is_zero()) throw MathError("class series with zero constant term is not invertible");
  std::size_t n = order();
  ClassSeries out(n);
  RatFn inv0 = coeffs_[0].inverse();
  out.coeffs_[0] = inv0;
  for (std::size_t k = 1; k <= n; ++k) {
    RatFn acc;
    for (std::size_t j = 1; j <= k; ++j) acc += coeffs_[j] * out.coeffs_[k - j];
    out.coeffs_[k] = -(acc * inv0);
  }
  return out;
}

ClassSeries ClassSeries::homogeneous_part(std::size_t k) const {
  ClassSeries out(order());
  if (k <= order()) out.coeffs_[k] = coeffs_[k];
  return out;
}

EquivariantChern equivariant_chern(const SquareMatrix& endomorphism) {
  EquivariantChern out;
  out.classes = elementary_symmetric(endomorphism);
  out.top = out.classes.empty() ? RatFn(1) : out.classes.back();
  return out;
}

EquivariantChern equivariant_chern_at_point(const FixedPoint& p) {
  EquivariantChern out = equivariant_chern(p.tangent);
  if (out.top.is_zero()) throw MathError("point " + p.name + " is a degenerate zero: det(tangent) = 0");
  return out;
}

ClassSeries virtual_tangent_classes(std::size_t n, long d) {
  return ClassSeries::tangent_pn(n) / ClassSeries::dual_line(n, d);
}

namespace {

void require_weight(std::size_t n, const ChernPoly& phi) {
  if (phi.classes() != n || phi.weight() != n) {
    throw MathError("Chern polynomial is over " + std::to_string(phi.classes()) + " classes, expected " +
                    std::to_string(n));
  }
  if (!check_weighted_degree(phi)) {
    throw MathError("Chern polynomial " + phi.to_string() + " is not weighted-homogeneous of degree " +
                    std::to_string(n));
  }
}

}  // namespace

Rational virtual_chern_numbers_pn(std::size_t n, long d, const ChernPoly& phi) {
  require_weight(n, phi);
  ClassSeries gamma = virtual_tangent_classes(n, d);
  ClassSeries total(n);
  for (const auto& [m, c] : phi.terms()) {
    ClassSeries term(n, {RatFn(c)});
    for (std::size_t i = 0; i < n; ++i) {
      ClassSeries part = gamma.homogeneous_part(i + 1);
      for (std::uint32_t e = 0; e < m[i]; ++e) term = term * part;
    }
    total = total + term;
  }
  return total[n].constant_value();
}

Rational chern_numbers_pn(std::size_t n, const ChernPoly& phi) {
  require_weight(n, phi);
  // c_k = binom(n+1, k) H^k; a weight-n monomial is a multiple of H^n.
  auto binom = [](std::size_t top, std::size_t k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), top, k);
    return Rational(r, mpz_class(1));
  };
  Rational total;
  for (const auto& [m, c] : phi.terms()) {
    Rational term = c;
    for (std::size_t i = 0; i < n; ++i) term *= binom(n + 1, i + 1).pow(m[i]);
    total += term;
  }
  return total;
}

}  // namespace loccalc
