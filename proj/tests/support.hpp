#pragma once

#include <random>
#include <string>
#include <vector>

#include "loccalc/matrix.hpp"
#include "loccalc/polynomial.hpp"
#include "loccalc/ratfn.hpp"

namespace loccalc::testing {

inline SparsePoly var(const std::string& name) { return SparsePoly::variable(name); }
inline RatFn rvar(const std::string& name) { return RatFn::variable(name); }

inline Rational random_rational(std::mt19937& rng, int span = 9) {
  std::uniform_int_distribution<int> num(-span, span);
  std::uniform_int_distribution<int> den(1, span);
  return Rational(mpz_class(num(rng)), mpz_class(den(rng)));
}

inline SparsePoly random_poly(std::mt19937& rng, const std::vector<std::string>& vars, int terms,
                              int max_exp = 2) {
  std::uniform_int_distribution<int> exp(0, max_exp);
  std::vector<SparsePoly::Term> ts;
  for (int i = 0; i < terms; ++i) {
    SparsePoly::Exponents e;
    for (std::size_t k = 0; k < vars.size(); ++k) e.push_back(static_cast<std::uint32_t>(exp(rng)));
    ts.push_back({e, random_rational(rng)});
  }
  return SparsePoly::from_terms(vars, ts);
}

inline SquareMatrix random_rational_matrix(std::mt19937& rng, std::size_t n) {
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = RatFn(random_rational(rng));
  }
  return m;
}

/// Laplace expansion along the first row; independent of the Bareiss path.
inline RatFn cofactor_det(const SquareMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return RatFn(1);
  if (n == 1) return m(0, 0);
  RatFn total;
  for (std::size_t col = 0; col < n; ++col) {
    SquareMatrix minor(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t cj = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == col) continue;
        minor(i - 1, cj++) = m(i, j);
      }
    }
    RatFn term = m(0, col) * cofactor_det(minor);
    total = (col % 2 == 0) ? total + term : total - term;
  }
  return total;
}

/// Sum_j x_j^m / prod_{i != j} (x_j - x_i) by direct exact summation over rationals.
inline Rational lagrange_sum(const std::vector<Rational>& nodes, unsigned m) {
  Rational total;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    Rational den(1);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (i != j) den *= nodes[j] - nodes[i];
    }
    total += nodes[j].pow(m) / den;
  }
  return total;
}

}  // namespace loccalc::testing
