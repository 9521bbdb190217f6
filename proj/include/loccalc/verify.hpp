#pragma once

#include <functional>
#include <string>
#include <vector>

#include "loccalc/residue.hpp"

namespace loccalc {

using ChartFunction = std::function<ComplexF(ComplexF)>;

/// (1,1)-form g(z) * (i/2) dz ^ dzbar on the affine chart of P^1.
struct FormOnChart {
  ChartFunction g;
  int decay_order = 4;
};

/// 1 / (pi (1 + |z|^2)^2), total mass 1.
FormOnChart fubini_study_form(double scale = 1.0);

struct QuadratureOptions {
  std::size_t panels = 64;  // Gauss-Legendre panels in theta, r = tan(theta)
  std::size_t angles = 64;  // trapezoid nodes in the argument
};

/// Integral of g over C with respect to area measure. Throws InputError when the
/// decay order is below 3 or contradicted by spot checks, MathError on non-finite samples.
double integrate_p1_form(const FormOnChart& omega, const QuadratureOptions& options = {});

/// Max over a 20 x 20 grid on [-2, 2]^2 of |(i/2) g v - df/dzbar|, the derivative taken by
/// central differences with step 1e-5.
double dbar_relation_check(const FormOnChart& omega, const ChartFunction& f, const ChartFunction& v);

/// Least-squares c with c * db/dzbar ~ (i/2) g v on the same grid.
ComplexF fit_potential(const FormOnChart& omega, const ChartFunction& basis, const ChartFunction& v);

struct ScenarioReport {
  std::string name;
  std::string lhs;
  std::string rhs;
  double abs_error = 0;
  double tolerance = 0;
  std::string status;  // "pass", "fail" or "warn"
  std::string note;

  bool passed() const { return status != "fail"; }
  std::string to_json() const;
};

struct DhReport {
  double lhs = 0;           // integral of omega
  ComplexF potential;       // fitted c in f = c / (1 + |z|^2) + shift
  double dbar_residual = 0;
  ComplexF residue_sum;     // sum_l f(x_l) / J_l
  ComplexF formula_rhs;       // (-2 pi i) * residue_sum
  double magnitude_rhs = 0; // |2 pi * residue_sum|
  int empirical_sign = 0;   // sign of formula_rhs / lhs
  bool shift_exact = false; // sum_l 1 / J_l == 0 exactly
  ScenarioReport report;
};

/// Complex Duistermaat-Heckman check on P^1 for V = z d/dz and omega = scale * FS.
DhReport dh_scenario(double scale = 1.0, double shift = 0.0);

struct SuiteOptions {
  bool fault_injection = false;  // use L = +J instead of the bracket convention
  bool empty_model = false;      // register a model without zeroes
};

/// Runs every scenario; failures are recorded, never thrown.
std::vector<ScenarioReport> run_suite(const SuiteOptions& options = {});

}  // namespace loccalc
