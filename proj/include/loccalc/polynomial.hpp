#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "loccalc/rational.hpp"

namespace loccalc {

/// Global variable order used for every canonical form: `t` first, then the weights
/// `l0, l1, ...` by index, then `s`, then remaining names by alphabetic prefix and
/// numeric suffix (so `z2` < `z10`).
bool variable_less(std::string_view a, std::string_view b);

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept sorted in descending graded-lexicographic order over the
/// polynomial's own variable list, which is itself sorted by `variable_less`.
/// Zero coefficients are never stored. Binary operations merge variable lists,
/// so polynomials over different variable sets combine freely; equality ignores
/// variables that do not occur.
class SparsePoly {
 public:
  using Exponents = std::vector<std::uint32_t>;
  struct Term {
    Exponents exponents;
    Rational coefficient;
  };

  SparsePoly() = default;
  SparsePoly(const Rational& constant);  // NOLINT(google-explicit-constructor)
  SparsePoly(long constant) : SparsePoly(Rational(constant)) {}  // NOLINT
  SparsePoly(int constant) : SparsePoly(Rational(constant)) {}   // NOLINT

  static SparsePoly variable(const std::string& name);

  /// Builds a polynomial from arbitrary (unsorted, possibly repeated or zero) terms.
  /// `variables` need not be sorted; exponents follow its order.
  static SparsePoly from_terms(std::vector<std::string> variables, std::vector<Term> terms);

  const std::vector<std::string>& variables() const { return vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant value; throws MathError if the polynomial is not constant.
  Rational constant_value() const;
  Rational constant_term() const;

  const Term& leading_term() const;
  const Rational& leading_coefficient() const;
  std::uint32_t total_degree() const;
  std::uint32_t degree(std::string_view var) const;
  /// Names of variables that occur with a nonzero exponent.
  std::vector<std::string> used_variables() const;

  /// Same polynomial over `variables` (a sorted superset of the used variables).
  SparsePoly with_variables(const std::vector<std::string>& variables) const;
  /// Drops variables that do not occur.
  SparsePoly trimmed() const;

  SparsePoly operator-() const;
  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  SparsePoly& operator*=(const SparsePoly& o);
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  SparsePoly scaled(const Rational& factor) const;
  SparsePoly pow(std::uint32_t exponent) const;

  SparsePoly derivative(std::string_view var) const;
  /// Replaces `var` by `value` everywhere.
  SparsePoly substitute(std::string_view var, const SparsePoly& value) const;
  /// Evaluates with every variable bound by `value_of`.
  Rational evaluate(const std::function<Rational(const std::string&)>& value_of) const;

  /// Quotient when `divisor` divides this polynomial exactly, std::nullopt otherwise.
  std::optional<SparsePoly> divide_exact(const SparsePoly& divisor) const;
  /// Scales so that the leading coefficient is 1 (zero stays zero).
  SparsePoly monic() const;
  /// Multiplier that turns all coefficients into coprime integers with positive leading term.
  Rational integer_normalizer() const;

  std::string to_string() const;

  friend bool operator==(const SparsePoly& a, const SparsePoly& b);

 private:
  friend class PolyBuilder;
  std::vector<std::string> vars_;
  std::vector<Term> terms_;
};

/// Descending graded-lexicographic comparison of exponent vectors of equal length.
bool grlex_greater(const SparsePoly::Exponents& a, const SparsePoly::Exponents& b);

/// Sorted union of two sorted variable lists.
std::vector<std::string> merge_variables(const std::vector<std::string>& a,
                                         const std::vector<std::string>& b);

/// Monic greatest common divisor (gcd(0, 0) = 0; constants give 1).
SparsePoly gcd(const SparsePoly& a, const SparsePoly& b);

inline std::ostream& operator<<(std::ostream& os, const SparsePoly& p) { return os << p.to_string(); }

}  // namespace loccalc
