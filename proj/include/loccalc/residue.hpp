#pragma once

#include <complex>
#include <string>
#include <vector>

#include "loccalc/expr.hpp"
#include "loccalc/matrix.hpp"

namespace loccalc {

using ComplexF = std::complex<double>;

/// Local residue of s / (a_1 ... a_n) at an isolated common zero `center` of the a_i.
struct ResidueProblem {
  std::size_t n = 0;
  std::vector<ComplexPoly> components;  // in z1 .. zn
  ComplexPoly numerator;
  std::vector<ComplexF> center;  // empty means the origin

  /// Parses components and numerator in the residue grammar (z1..zn, i).
  static ResidueProblem parse(std::size_t n, const std::vector<std::string>& components, const std::string& numerator);
};

/// Polynomial over C compiled for repeated Horner evaluation.
class ComplexEvaluator {
 public:
  ComplexEvaluator(const ComplexPoly& p, std::size_t n);
  ComplexF operator()(const ComplexF* z) const;

 private:
  struct Node {
    ComplexF constant;
    std::vector<Node> coefficients;  // by power of the node's variable; empty for a leaf
  };
  static Node build(std::vector<std::pair<std::vector<std::uint32_t>, ComplexF>> terms, std::size_t var,
                    std::size_t n);
  static ComplexF eval(const Node& node, const ComplexF* z, std::size_t var);

  Node root_;
};

/// s0 / det J; throws MathError when det J = 0.
RatFn residue_nondegenerate(const RatFn& s0, const SquareMatrix& jacobian);

struct ContourOptions {
  double radius = 0.5;
  std::size_t samples = 256;
};

/// Iterated trapezoid rule on the torus |z_k - center_k| = radius; n <= 3, samples a power of two >= 64.
/// Throws MathError when a_1 ... a_n nearly vanishes on the torus.
ComplexF residue_contour_numeric(const ResidueProblem& p, const ContourOptions& options = {});

struct ResidueTotal {
  RatFn exact;
  ComplexF numeric;
};

struct NondegenerateZero {
  RatFn value;  // s(x_0)
  SquareMatrix jacobian;
};

ResidueTotal residue_total(const std::vector<NondegenerateZero>& zeroes,
                           const std::vector<ResidueProblem>& degenerate, const ContourOptions& options = {});

}  // namespace loccalc
