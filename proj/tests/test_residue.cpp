#include <doctest.h>

#include <random>

#include "loccalc/error.hpp"
#include "loccalc/residue.hpp"
#include "support.hpp"

using namespace loccalc;
using namespace loccalc::testing;

namespace {

double distance(ComplexF a, ComplexF b) { return std::abs(a - b); }

// Row dominance keeps every a_i(z) = (A z)_i away from zero on the torus |z_k| = r, so the
// torus is homologous to the cycle |a_i| = eps. A factor 2 margin bounds the trapezoid aliasing by 2^-samples.
bool diagonally_dominant(const SquareMatrix& a) {
  for (std::size_t r = 0; r < a.size(); ++r) {
    Rational off;
    for (std::size_t c = 0; c < a.size(); ++c) {
      if (c != r) off += a(r, c).constant_value().abs();
    }
    if (a(r, r).is_zero() || a(r, r).constant_value().abs() < Rational(2) * off) return false;
  }
  return true;
}

std::string linear_form(const SquareMatrix& a, std::size_t row) {
  std::string out;
  for (std::size_t c = 0; c < a.size(); ++c) {
    out += (c ? " + (" : "(") + a(row, c).to_string() + ")*z" + std::to_string(c + 1);
  }
  return out;
}

}  // namespace

TEST_CASE("nondegenerate residues") {
  CHECK(residue_nondegenerate(RatFn(5), SquareMatrix::diagonal({RatFn(2), RatFn(1)})) ==
        RatFn(Rational(5) / Rational(2)));
  CHECK(residue_nondegenerate(RatFn(0), SquareMatrix::diagonal({RatFn(2), RatFn(1)})).is_zero());
  RatFn l0 = rvar("l0"), l1 = rvar("l1");
  CHECK(residue_nondegenerate(l0 * l0, SquareMatrix::diagonal({l0 - l1, l0})) == l0 / (l0 - l1));
  CHECK_THROWS_WITH_AS(residue_nondegenerate(RatFn(1), SquareMatrix::diagonal({RatFn(0), RatFn(1)})),
                       doctest::Contains("numeric"), MathError);
}

TEST_CASE("Horner evaluation") {
  ResidueProblem p = ResidueProblem::parse(2, {"z1^3 - 2*i*z1*z2 + 1/2", "z2"}, "1");
  ComplexEvaluator f(p.components[0], 2);
  ComplexF z[2] = {ComplexF(0.3, -0.2), ComplexF(-1.1, 0.7)};
  ComplexF expected = z[0] * z[0] * z[0] - 2.0 * ComplexF(0, 1) * z[0] * z[1] + 0.5;
  CHECK(distance(f(z), expected) < 1e-14);
}

TEST_CASE("contour residues of simple poles and Laurent cases") {
  CHECK(distance(residue_contour_numeric(ResidueProblem::parse(1, {"z1"}, "1")), 1.0) < 1e-9);
  CHECK(distance(residue_contour_numeric(ResidueProblem::parse(1, {"z1^2"}, "z1")), 1.0) < 1e-9);
  CHECK(distance(residue_contour_numeric(ResidueProblem::parse(1, {"z1^2"}, "1")), 0.0) < 1e-9);
  CHECK(distance(residue_contour_numeric(ResidueProblem::parse(2, {"z1^2", "z2^3"}, "z1*z2^2")), 1.0) < 1e-8);
  CHECK(distance(residue_contour_numeric(ResidueProblem::parse(1, {"z1^3"}, "(2 + i)*z1^2")), ComplexF(2, 1)) < 1e-9);
  CHECK(distance(residue_contour_numeric(ResidueProblem::parse(3, {"z1", "z2^2", "z3"}, "z2 + 7")), 1.0) < 1e-8);
}

TEST_CASE("linear problems against the exact determinant") {
  std::mt19937 rng(41);
  int done = 0;
  while (done < 20) {
    std::size_t n = 1 + done % 2;
    SquareMatrix a = random_rational_matrix(rng, n);
    if (!diagonally_dominant(a)) continue;
    std::vector<std::string> comps;
    for (std::size_t r = 0; r < n; ++r) comps.push_back(linear_form(a, r));
    ResidueProblem p = ResidueProblem::parse(n, comps, "1");
    double exact = residue_nondegenerate(RatFn(1), a).constant_value().to_double();
    ComplexF numeric = residue_contour_numeric(p);
    CHECK(distance(numeric, exact) <= 1e-9 * std::abs(exact));
    ++done;
  }
}

TEST_CASE("radius independence, convergence and linearity") {
  ResidueProblem p = ResidueProblem::parse(2, {"z1 + z2^2", "3*z2 - z1"}, "1 + z1");
  ComplexF a = residue_contour_numeric(p, {0.5, 256});
  ComplexF b = residue_contour_numeric(p, {0.8, 256});
  CHECK(distance(a, b) < 1e-9);

  for (const char* s : {"1", "z1"}) {
    ResidueProblem q = ResidueProblem::parse(1, {"z1^2"}, s);
    CHECK(distance(residue_contour_numeric(q, {0.5, 256}), residue_contour_numeric(q, {0.5, 512})) < 1e-10);
  }

  ResidueProblem s1 = ResidueProblem::parse(2, {"z1^2 + z2", "z2^2 - z1"}, "z1*z2");
  ResidueProblem s2 = ResidueProblem::parse(2, {"z1^2 + z2", "z2^2 - z1"}, "1 + z2");
  ResidueProblem mix = ResidueProblem::parse(2, {"z1^2 + z2", "z2^2 - z1"}, "3*z1*z2 - 2*(1 + z2)");
  ComplexF lhs = residue_contour_numeric(mix, {0.3, 256});
  ComplexF rhs = 3.0 * residue_contour_numeric(s1, {0.3, 256}) - 2.0 * residue_contour_numeric(s2, {0.3, 256});
  CHECK(distance(lhs, rhs) < 1e-9);
}

TEST_CASE("contour errors") {
  ResidueProblem near = ResidueProblem::parse(1, {"z1*(z1 - 1/2)"}, "1");
  CHECK_THROWS_WITH_AS(residue_contour_numeric(near, {0.5, 256}), doctest::Contains("radius"), MathError);
  CHECK_NOTHROW(residue_contour_numeric(near, {0.25, 256}));
  ResidueProblem ok = ResidueProblem::parse(1, {"z1"}, "1");
  CHECK_THROWS_AS(residue_contour_numeric(ok, {0.5, 100}), InputError);
  CHECK_THROWS_AS(residue_contour_numeric(ok, {0.5, 32}), InputError);
  CHECK_THROWS_AS(residue_contour_numeric(ok, {-1.0, 256}), InputError);
  CHECK_THROWS_AS(residue_contour_numeric(ResidueProblem::parse(1, {"z1 + 1"}, "1")), MathError);
  CHECK_THROWS_AS(ResidueProblem::parse(1, {"z2"}, "1"), InputError);
  CHECK_THROWS_AS(ResidueProblem::parse(2, {"z1"}, "1"), InputError);
}

TEST_CASE("shifted centers") {
  ResidueProblem p = ResidueProblem::parse(1, {"z1^2 - z1"}, "1");
  p.center = {ComplexF(1, 0)};
  CHECK(distance(residue_contour_numeric(p, {0.5, 256}), 1.0) < 1e-9);
}

TEST_CASE("residue totals") {
  ResidueTotal two = residue_total({{RatFn(1), SquareMatrix::diagonal({RatFn(1)})},
                                    {RatFn(1), SquareMatrix::diagonal({RatFn(-1)})}},
                                   {});
  CHECK(two.exact.is_zero());
  CHECK(two.numeric == ComplexF(0, 0));

  ResidueTotal deg = residue_total({}, {ResidueProblem::parse(1, {"z1^2"}, "z1")});
  CHECK(deg.exact.is_zero());
  CHECK(distance(deg.numeric, 1.0) < 1e-9);

  // z (z - 1) d/dz: derivative 2z - 1 at the zeroes 0 and 1.
  SparsePoly z = var("z");
  SparsePoly field = z * (z - SparsePoly(1));
  SparsePoly slope = field.derivative("z");
  std::vector<NondegenerateZero> zeroes;
  for (long root : {0L, 1L}) {
    RatFn j(slope.substitute("z", SparsePoly(root)));
    zeroes.push_back({RatFn(1), SquareMatrix::diagonal({j})});
  }
  CHECK(zeroes[0].jacobian(0, 0) == RatFn(-1));
  CHECK(zeroes[1].jacobian(0, 0) == RatFn(1));
  CHECK(residue_total(zeroes, {}).exact.is_zero());
}
