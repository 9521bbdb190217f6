#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "loccalc/chern.hpp"
#include "loccalc/model.hpp"

namespace loccalc {

/// How the stored chart Jacobian J becomes the linearization L at a zero.
/// Bracket uses L = -J, the action u -> [V, u] on vector fields; Jacobian uses L = J.
/// Only Bracket makes fibre weights such as c_j = l_j integrate to their classical values.
enum class Linearization { Bracket, Jacobian };

struct LocalizationResult {
  RatFn value;
  std::vector<std::pair<std::string, RatFn>> per_point;
  /// Powers of the formal unit 2*pi*i and of t left after prefactor and numerator normalization.
  int tau_exponent = 0;
  int t_exponent = 0;
};

/// Per-point numerators nu_j for the general localization right-hand side. The
/// exponents record the (2*pi*i)^a t^b normalization the numerators carry.
struct Numerators {
  std::map<std::string, RatFn> values;
  int tau_exponent = 0;
  int t_exponent = 0;

  /// Numerators in weight-normalized form: each carries (t / 2*pi*i)^n.
  static Numerators normalized(std::map<std::string, RatFn> values, std::size_t n);
};

/// L_{V,j} under the chosen convention.
SquareMatrix linearization(const FixedPoint& p, Linearization convention = Linearization::Bracket);

/// sum_j Phi(c~_1(x_j), ..., c~_n(x_j)) / c~_n(x_j).
LocalizationResult bott_sum(const VarietyModel& m, const ChernPoly& phi,
                            Linearization convention = Linearization::Bracket);

/// sum_j 1 / det L_{V,j}.
RatFn zero_sum_identity(const VarietyModel& m, Linearization convention = Linearization::Bracket);

/// sum_j P(e_1(L~_j), ..., e_r(L~_j)) / det L_{V,j}, the bundle action L~_j taken from
/// bundle_endo or line_weight. P has `rank` classes and weight dim.
LocalizationResult carrell_liebermann_sum(const VarietyModel& m, const ChernPoly& p,
                                          Linearization convention = Linearization::Bracket);

/// (2*pi*i / t)^n * sum_j nu_j / det L_{V,j}.
LocalizationResult localization_rhs(const VarietyModel& m, const Numerators& numerators,
                                    Linearization convention = Linearization::Bracket);

/// Meromorphic version for a section of T tensor L: sum_j Phi(e(L_j)) / e_n(L_j) with the
/// Jacobians taken in the trivialization recorded with twist_weight.
LocalizationResult baum_bott_sum(const VarietyModel& m, const ChernPoly& phi,
                                 Linearization convention = Linearization::Bracket);

/// num' * den - num * den' == 0 for every variable of f.
bool weight_independent(const RatFn& f);

}  // namespace loccalc
