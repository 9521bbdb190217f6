#include <doctest.h>

#include <random>

#include "loccalc/chern.hpp"
#include "loccalc/error.hpp"
#include "support.hpp"

using namespace loccalc;
using namespace loccalc::testing;

TEST_CASE("weighted degree") {
  CHECK(check_weighted_degree(ChernPoly::parse("c1^3", 3)));
  CHECK(check_weighted_degree(ChernPoly::parse("c1*c2", 3)));
  CHECK_FALSE(check_weighted_degree(ChernPoly::parse("c2^2", 3)));
  CHECK(ChernPoly::parse("c2^2", 3).inhomogeneous());
  CHECK(check_weighted_degree(ChernPoly::parse("c1^2 - 2*c2 + 0*c1", 2)));
  CHECK_THROWS_AS(ChernPoly::parse("c1/c2", 2), InputError);
  CHECK_THROWS_AS(ChernPoly::parse("c3", 2), InputError);
}

TEST_CASE("equivariant classes at a point") {
  FixedPoint p{"p", SquareMatrix::diagonal({RatFn(1), RatFn(2)}), {}, {}, {}};
  EquivariantChern c = equivariant_chern_at_point(p);
  CHECK(c.classes == std::vector<RatFn>{RatFn(3), RatFn(2)});
  CHECK(c.top == RatFn(2));

  RatFn w = rvar("l1") - rvar("l0");
  FixedPoint q{"q", SquareMatrix::diagonal({w}), {}, {}, {}};
  CHECK(equivariant_chern_at_point(q).classes == std::vector<RatFn>{w});

  FixedPoint bad{"b", SquareMatrix::from_rows({{RatFn(0), RatFn(1)}, {RatFn(0), RatFn(0)}}), {}, {}, {}};
  CHECK_THROWS_AS(equivariant_chern_at_point(bad), MathError);

  std::mt19937 rng(17);
  for (int round = 0; round < 20; ++round) {
    SquareMatrix m = random_rational_matrix(rng, 2);
    if (det(m).is_zero()) continue;
    FixedPoint r{"r", m, {}, {}, {}};
    CHECK(equivariant_chern_at_point(r).classes == elementary_symmetric(m));
  }
}

namespace {

// Hand-rolled truncated products of rational coefficient lists.
std::vector<Rational> mul(const std::vector<Rational>& a, const std::vector<Rational>& b, std::size_t n) {
  std::vector<Rational> out(n + 1);
  for (std::size_t i = 0; i < a.size() && i <= n; ++i) {
    for (std::size_t j = 0; j < b.size() && i + j <= n; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace

TEST_CASE("virtual Chern numbers on P^n") {
  CHECK(virtual_chern_numbers_pn(1, 1, ChernPoly::parse("c1", 1)) == Rational(3));
  CHECK(virtual_chern_numbers_pn(1, 0, ChernPoly::parse("c1", 1)) == Rational(2));
  CHECK(virtual_chern_numbers_pn(2, 0, ChernPoly::parse("c1^2", 2)) == Rational(9));
  CHECK_THROWS_AS(virtual_chern_numbers_pn(2, 1, ChernPoly::parse("c1", 2)), MathError);

  // (1+H)^2 * (1 + dH + d^2 H^2 + ...) truncated at H^1 for P^1.
  for (long d = 0; d <= 4; ++d) {
    std::vector<Rational> tangent{Rational(1), Rational(2)};
    std::vector<Rational> geometric{Rational(1), Rational(d)};
    CHECK(virtual_chern_numbers_pn(1, d, ChernPoly::parse("c1", 1)) == mul(tangent, geometric, 1)[1]);
  }
  // P^2, gamma_1^2 and gamma_2.
  for (long d = 0; d <= 3; ++d) {
    std::vector<Rational> tangent{Rational(1), Rational(3), Rational(3)};
    std::vector<Rational> geometric{Rational(1), Rational(d), Rational(d * d)};
    auto gamma = mul(tangent, geometric, 2);
    CHECK(virtual_chern_numbers_pn(2, d, ChernPoly::parse("c1^2", 2)) == gamma[1] * gamma[1]);
    CHECK(virtual_chern_numbers_pn(2, d, ChernPoly::parse("c2", 2)) == gamma[2]);
  }
}

TEST_CASE("virtual classes satisfy Newton's identities against the Chern character") {
  // Power sums of T - O(d)* on P^n: p_k = (n + 1) - (-d)^k.
  for (std::size_t n = 1; n <= 2; ++n) {
    for (long d = 0; d <= 3; ++d) {
      ClassSeries gamma = virtual_tangent_classes(n, d);
      std::vector<Rational> e(n + 1), p(n + 1);
      for (std::size_t k = 0; k <= n; ++k) e[k] = gamma[k].constant_value();
      for (std::size_t k = 1; k <= n; ++k) p[k] = Rational(static_cast<long>(n + 1)) - Rational(-d).pow(k);
      for (std::size_t k = 1; k <= n; ++k) {
        Rational rhs = (k % 2 == 1 ? Rational(1) : Rational(-1)) * Rational(static_cast<long>(k)) * e[k];
        for (std::size_t i = 1; i < k; ++i) rhs += (i % 2 == 1 ? Rational(1) : Rational(-1)) * e[i] * p[k - i];
        CHECK(p[k] == rhs);
      }
    }
  }
}

TEST_CASE("Chern numbers of P^n") {
  CHECK(chern_numbers_pn(2, ChernPoly::parse("c2", 2)) == Rational(3));
  CHECK(chern_numbers_pn(2, ChernPoly::parse("c1^2", 2)) == Rational(9));
  CHECK(chern_numbers_pn(3, ChernPoly::parse("c1*c2", 3)) == Rational(24));
  CHECK(chern_numbers_pn(3, ChernPoly::parse("c1^3", 3)) == Rational(64));
  CHECK(chern_numbers_pn(3, ChernPoly::parse("c3", 3)) == Rational(4));
  CHECK_THROWS_AS(chern_numbers_pn(3, ChernPoly::parse("c2^2", 3)), MathError);
  for (std::size_t n = 1; n <= 4; ++n) {
    ChernPoly top = ChernPoly::parse("c" + std::to_string(n), n);
    CHECK(chern_numbers_pn(n, top) == Rational(static_cast<long>(n + 1)));
    CHECK(virtual_chern_numbers_pn(n, 0, top) == Rational(static_cast<long>(n + 1)));
  }
}

TEST_CASE("class series inverse") {
  ClassSeries a = ClassSeries::tangent_pn(4);
  ClassSeries one = a * a.inverse();
  CHECK(one[0] == RatFn(1));
  for (std::size_t k = 1; k <= 4; ++k) CHECK(one[k].is_zero());
  CHECK_THROWS_AS(ClassSeries(2).inverse(), MathError);
}
