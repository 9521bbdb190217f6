#include "loccalc/localize.hpp"

#include "loccalc/error.hpp"

namespace loccalc {

namespace {

// Pairwise summation keeps intermediate denominators balanced.
RatFn tree_sum(std::vector<RatFn> terms) {
  if (terms.empty()) return RatFn();
  while (terms.size() > 1) {
    std::vector<RatFn> next;
    next.reserve((terms.size() + 1) / 2);
    for (std::size_t k = 0; k + 1 < terms.size(); k += 2) next.push_back(terms[k] + terms[k + 1]);
    if (terms.size() % 2 == 1) next.push_back(std::move(terms.back()));
    terms = std::move(next);
  }
  return std::move(terms.front());
}

void require_points(const VarietyModel& m) {
  require_valid(m);
  if (m.dim == 0) throw InputError("localization needs a model of positive dimension");
}

RatFn nonzero_det(const FixedPoint& p, const SquareMatrix& l) {
  RatFn d = det(l);
  if (d.is_zero()) throw MathError("point " + p.name + " is a degenerate zero: det(tangent) = 0");
  return d;
}

void require_phi(const VarietyModel& m, const ChernPoly& phi, std::size_t classes, const char* what) {
  if (phi.classes() != classes) {
    throw InputError(std::string(what) + " must be a polynomial in " + std::to_string(classes) + " classes, got " +
                     std::to_string(phi.classes()));
  }
  bool homogeneous = true;
  for (const auto& [exponents, coefficient] : phi.terms()) homogeneous = homogeneous && weighted_degree(exponents) == m.dim;
  if (!homogeneous) {
    throw MathError(std::string(what) + " " + phi.to_string() + " is not weighted-homogeneous of degree " +
                    std::to_string(m.dim));
  }
}

LocalizationResult finish(std::vector<std::pair<std::string, RatFn>> per_point) {
  LocalizationResult r;
  std::vector<RatFn> terms;
  for (const auto& [name, s] : per_point) terms.push_back(s);
  r.value = tree_sum(std::move(terms));
  r.per_point = std::move(per_point);
  return r;
}

// Prefactor (2 pi i / t)^n times whatever the numerators carry.
void track_units(LocalizationResult& r, std::size_t n, int numerator_tau, int numerator_t) {
  int k = static_cast<int>(n);
  r.tau_exponent = k + numerator_tau;
  r.t_exponent = -k + numerator_t;
}

// Characteristic integrands are weight-normalized: each numerator carries (t / 2 pi i)^n.
void characteristic_units(LocalizationResult& r, std::size_t n) {
  int k = static_cast<int>(n);
  track_units(r, n, -k, k);
}

LocalizationResult tangent_sum(const VarietyModel& m, const ChernPoly& phi, Linearization convention) {
  std::vector<std::pair<std::string, RatFn>> per_point;
  for (const auto& p : m.points) {
    SquareMatrix l = linearization(p, convention);
    EquivariantChern c = equivariant_chern(l);
    if (c.top.is_zero()) throw MathError("point " + p.name + " is a degenerate zero: det(tangent) = 0");
    per_point.emplace_back(p.name, phi.evaluate(c.classes) / c.top);
  }
  LocalizationResult r = finish(std::move(per_point));
  characteristic_units(r, m.dim);
  return r;
}

}  // namespace

Numerators Numerators::normalized(std::map<std::string, RatFn> values, std::size_t n) {
  int k = static_cast<int>(n);
  return Numerators{std::move(values), -k, k};
}

SquareMatrix linearization(const FixedPoint& p, Linearization convention) {
  return convention == Linearization::Bracket ? p.tangent.scaled(Rational(-1)) : p.tangent;
}

LocalizationResult bott_sum(const VarietyModel& m, const ChernPoly& phi, Linearization convention) {
  require_points(m);
  require_phi(m, phi, m.dim, "integrand");
  return tangent_sum(m, phi, convention);
}

RatFn zero_sum_identity(const VarietyModel& m, Linearization convention) {
  require_points(m);
  std::vector<RatFn> terms;
  for (const auto& p : m.points) terms.push_back(nonzero_det(p, linearization(p, convention)).inverse());
  return tree_sum(std::move(terms));
}

LocalizationResult carrell_liebermann_sum(const VarietyModel& m, const ChernPoly& p, Linearization convention) {
  require_points(m);
  if (m.rank == 0) throw InputError("Carrell-Liebermann sum needs a bundle (model rank is 0)");
  require_phi(m, p, m.rank, "bundle polynomial");
  std::vector<std::pair<std::string, RatFn>> per_point;
  for (const auto& x : m.points) {
    std::vector<RatFn> classes;
    if (x.bundle_endo) {
      classes = elementary_symmetric(*x.bundle_endo);
    } else if (x.line_weight) {
      classes = {*x.line_weight};
    } else {
      throw InputError("point " + x.name + " carries no bundle data (bundle_endo or line_weight)");
    }
    per_point.emplace_back(x.name, p.evaluate(classes) / nonzero_det(x, linearization(x, convention)));
  }
  LocalizationResult r = finish(std::move(per_point));
  characteristic_units(r, m.dim);
  return r;
}

LocalizationResult localization_rhs(const VarietyModel& m, const Numerators& numerators, Linearization convention) {
  require_points(m);
  std::vector<std::pair<std::string, RatFn>> per_point;
  for (const auto& x : m.points) {
    auto it = numerators.values.find(x.name);
    if (it == numerators.values.end()) throw InputError("missing numerator for point " + x.name);
    per_point.emplace_back(x.name, it->second / nonzero_det(x, linearization(x, convention)));
  }
  for (const auto& [name, value] : numerators.values) {
    bool known = false;
    for (const auto& x : m.points) known = known || x.name == name;
    if (!known) throw InputError("numerator given for unknown point " + name);
  }
  LocalizationResult r = finish(std::move(per_point));
  track_units(r, m.dim, numerators.tau_exponent, numerators.t_exponent);
  return r;
}

LocalizationResult baum_bott_sum(const VarietyModel& m, const ChernPoly& phi, Linearization convention) {
  require_points(m);
  require_phi(m, phi, m.dim, "integrand");
  for (const auto& p : m.points) {
    if (!p.twist_weight) throw InputError("point " + p.name + " has no twist_weight: not a meromorphic model");
  }
  return tangent_sum(m, phi, convention);
}

bool weight_independent(const RatFn& f) {
  for (const auto& v : f.used_variables()) {
    SparsePoly cleared = f.num().derivative(v) * f.den() - f.num() * f.den().derivative(v);
    if (!cleared.is_zero()) return false;
  }
  return true;
}

}  // namespace loccalc
