#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "loccalc/matrix.hpp"
#include "loccalc/ratfn.hpp"

namespace loccalc {

/// One isolated zero x_j of the vector field and the data localization consumes there.
struct FixedPoint {
  std::string name;
  /// Jacobian of the field in chart coordinates at x_j (n x n).
  SquareMatrix tangent;
  /// Induced endomorphism of the bundle fibre (r x r), when the bundle is given as a matrix.
  std::optional<SquareMatrix> bundle_endo;
  /// Scalar action c_j on a line-bundle fibre.
  std::optional<RatFn> line_weight;
  /// Local weight of the twisting line bundle (meromorphic fields only).
  std::optional<RatFn> twist_weight;

  friend bool operator==(const FixedPoint&, const FixedPoint&) = default;
};

struct VarietyModel {
  std::size_t dim = 0;
  /// Bundle rank r, 0 when the model carries no bundle.
  std::size_t rank = 0;
  std::vector<FixedPoint> points;
  /// True when weights are indeterminates rather than numbers.
  bool symbolic = false;

  friend bool operator==(const VarietyModel&, const VarietyModel&) = default;
};

struct ValidationIssue {
  enum class Severity { Warning, Error };
  Severity severity;
  std::string point;  // empty for model-level issues
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const;
  std::vector<std::string> degenerate_points() const;
};

/// Checks shapes, unique names and det(tangent) != 0 at every point.
/// Never modifies the model; an empty point list yields a "no zeroes" warning.
ValidationReport validate(const VarietyModel& model);

/// Throws MathError describing the first error in `validate(model)`.
void require_valid(const VarietyModel& model);

/// Symbolic weights l0, ..., ln.
std::vector<RatFn> symbolic_weights(std::size_t count);

/// P^n with the torus field V = sum_i w_i z_i d/dz_i. At p_j the tangent matrix is
/// diag(w_i - w_j, i != j) and the O(d) fibre weight is d * w_j.
/// Throws MathError("... nondegenerate ...") when two weights coincide.
VarietyModel build_projective_space(std::size_t n, const std::vector<RatFn>& weights, long line_degree = 1);
VarietyModel build_projective_space(std::size_t n, long line_degree = 1);

/// A single point (dimension 0) with line weight 0; the unit for `build_product`.
VarietyModel build_point();

/// Fixed points are pairs with block-diagonal tangents. Line weights add when both
/// factors carry them; other bundle data is dropped.
VarietyModel build_product(const VarietyModel& a, const VarietyModel& b);

/// Meromorphic field on P^1: V = lead * prod_k (z - r_k) d/dz in the chart z = z1/z0,
/// a section of T(d) with d = #roots - 2. Each root becomes a point whose tangent is
/// the derivative of the component there; twist weights are 1 (the chart trivialization z0^d).
VarietyModel build_p1_meromorphic(const std::vector<Rational>& roots, const Rational& lead = Rational(1));

/// Section of T(1) on P^n given in homogeneous form by a_i = z_i * L_i(z) with linear forms
/// L_i (row i holds the coefficients of L_i). Its 2^(n+1) - 1 zeroes are found exactly:
/// for each nonempty support S, z_k = 0 off S and L_i equal on S. Tangents are the
/// Jacobians in the affine chart of a nonzero coordinate, trivializing O(1) by that coordinate.
VarietyModel build_pn_diagonal_quadratic(std::size_t n, const std::vector<std::vector<Rational>>& linear_forms);

/// Model file (JSON) round-trip; entries are strings in the expression grammar.
std::string model_to_json(const VarietyModel& model);
VarietyModel model_from_json(const std::string& text);
VarietyModel load_model(const std::filesystem::path& path);
void save_model(const VarietyModel& model, const std::filesystem::path& path);

}  // namespace loccalc
