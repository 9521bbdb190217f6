#include <doctest.h>

#include <filesystem>
#include <random>

#include "loccalc/error.hpp"
#include "loccalc/expr.hpp"
#include "loccalc/model.hpp"
#include "support.hpp"

using namespace loccalc;
using namespace loccalc::testing;

namespace {

std::vector<RatFn> numbers(std::initializer_list<long> xs) {
  std::vector<RatFn> out;
  for (long x : xs) out.push_back(RatFn(x));
  return out;
}

}  // namespace

TEST_CASE("P1 tangents agree with the chart linearization") {
  VarietyModel m = build_projective_space(1);
  REQUIRE(m.points.size() == 2);
  // Chart w = z1/z0 near p0: d/dt of w under z_i -> exp(l_i t) z_i gives (l1 - l0) w.
  RatFn w = rvar("w");
  RatFn field = (rvar("l1") - rvar("l0")) * w;
  CHECK(m.points[0].tangent(0, 0) == field.derivative("w"));
  // Near p1 the chart is u = z0/z1 = 1/w; du = -w^-2 dw gives (l0 - l1) u.
  RatFn u = w.inverse();
  RatFn du = -(u * u) * field;
  CHECK(m.points[1].tangent(0, 0) == (du / u).substitute("w", u.inverse()));
  CHECK(m.points[1].tangent(0, 0) == rvar("l0") - rvar("l1"));
  CHECK(*m.points[0].line_weight == rvar("l0"));
  CHECK(m.symbolic);
}

TEST_CASE("P2 tangent determinants at weights 0, 1, 3") {
  VarietyModel m = build_projective_space(2, numbers({0, 1, 3}));
  REQUIRE(m.points.size() == 3);
  CHECK(m.dim == 2);
  CHECK(det(m.points[0].tangent) == RatFn(3));
  CHECK(det(m.points[1].tangent) == RatFn(-2));
  CHECK(det(m.points[2].tangent) == RatFn(6));
  CHECK_FALSE(m.symbolic);
}

TEST_CASE("repeated weights are rejected") {
  CHECK_THROWS_AS(build_projective_space(1, {rvar("l0"), rvar("l0")}), MathError);
  CHECK_THROWS_AS(build_projective_space(2, numbers({0, 1})), InputError);
  CHECK_THROWS_AS(build_projective_space(0, numbers({0})), InputError);
}

TEST_CASE("line degree scales the fibre weights") {
  VarietyModel m = build_projective_space(2, numbers({2, 5, 7}), 3);
  CHECK(*m.points[1].line_weight == RatFn(15));
}

TEST_CASE("products") {
  VarietyModel p1 = build_projective_space(1, numbers({0, 1}));
  VarietyModel q1 = build_projective_space(1, numbers({2, 7}));
  VarietyModel pp = build_product(p1, q1);
  CHECK(pp.dim == 2);
  REQUIRE(pp.points.size() == 4);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      CHECK(det(pp.points[2 * a + b].tangent) == det(p1.points[a].tangent) * det(q1.points[b].tangent));
    }
  }
  CHECK(pp.points[1].name == "(p0,p1)");

  VarietyModel copy = build_product(p1, build_point());
  REQUIRE(copy.points.size() == 2);
  CHECK(copy.dim == 1);
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(copy.points[j].tangent == p1.points[j].tangent);
    CHECK(copy.points[j].line_weight == p1.points[j].line_weight);
  }

  VarietyModel p1p2 = build_product(build_projective_space(1), build_projective_space(2, numbers({1, 4, 9})));
  CHECK(p1p2.dim == 3);
  CHECK(p1p2.points.size() == 6);
  CHECK(validate(p1p2).ok());
}

TEST_CASE("validation") {
  CHECK(validate(build_projective_space(2)).ok());
  CHECK(validate(build_projective_space(2)).issues.empty());

  VarietyModel bad = build_projective_space(2, numbers({0, 1, 3}));
  bad.points[1].tangent(0, 0) = RatFn(0);
  VarietyModel before = bad;
  ValidationReport report = validate(bad);
  CHECK_FALSE(report.ok());
  CHECK(report.degenerate_points() == std::vector<std::string>{"p1"});
  CHECK(bad == before);
  CHECK_THROWS_AS(require_valid(bad), MathError);

  VarietyModel empty;
  empty.dim = 2;
  ValidationReport none = validate(empty);
  CHECK(none.ok());
  REQUIRE(none.issues.size() == 1);
  CHECK(none.issues[0].severity == ValidationIssue::Severity::Warning);
  CHECK(none.issues[0].message.find("no zeroes") != std::string::npos);

  VarietyModel dup = build_projective_space(1);
  dup.points[1].name = "p0";
  CHECK_FALSE(validate(dup).ok());
}

TEST_CASE("model files round-trip") {
  VarietyModel m = build_projective_space(2);
  CHECK(model_from_json(model_to_json(m)) == m);
  auto path = std::filesystem::temp_directory_path() / "loccalc_p2_model.json";
  save_model(m, path);
  CHECK(load_model(path) == m);
  std::filesystem::remove(path);

  VarietyModel mero = build_p1_meromorphic({Rational(0), Rational(1), Rational(3)});
  CHECK(model_from_json(model_to_json(mero)) == mero);
}

TEST_CASE("model file diagnostics") {
  const std::string missing = R"({"dim": 1, "rank": 1, "points": [{"name": "p0", "line_weight": "l0"}]})";
  try {
    model_from_json(missing);
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("\"tangent\"") != std::string::npos);
  }
  const std::string reducible = R"({"dim": 1, "rank": 1, "points": [{"name": "p0", "tangent": [["2/4"]], "line_weight": 3}]})";
  VarietyModel m = model_from_json(reducible);
  CHECK(m.points[0].tangent(0, 0) == RatFn(Rational(1) / Rational(2)));
  CHECK(m.points[0].tangent(0, 0).to_string() == "1/2");
  CHECK(*m.points[0].line_weight == RatFn(3));
  CHECK_THROWS_AS(model_from_json("{\"dim\": 1,\n \"rank\": }"), SchemaError);
  CHECK_THROWS_AS(model_from_json(R"({"dim": 1, "rank": 0, "points": [{"name": "a", "tangent": [["z1"]]}]})"),
                  SchemaError);
  CHECK_THROWS_AS(model_from_json(R"({"dim": 2, "rank": 0, "points": [{"name": "a", "tangent": [["1"]]}]})"),
                  SchemaError);
}

TEST_CASE("substituting weights commutes with building") {
  std::mt19937 rng(3);
  for (int round = 0; round < 10; ++round) {
    std::vector<Rational> values;
    for (int k = 0; k < 4; ++k) values.push_back(random_rational(rng) + Rational(10 * k));
    VarietyModel sym = build_projective_space(3);
    std::vector<RatFn> w;
    for (auto& v : values) w.push_back(RatFn(v));
    VarietyModel num = build_projective_space(3, w);
    for (std::size_t j = 0; j < 4; ++j) {
      SquareMatrix t = sym.points[j].tangent;
      RatFn lw = *sym.points[j].line_weight;
      for (std::size_t k = 0; k < 4; ++k) {
        t = t.substitute("l" + std::to_string(k), RatFn(values[k]));
        lw = lw.substitute("l" + std::to_string(k), RatFn(values[k]));
      }
      CHECK(t == num.points[j].tangent);
      CHECK(lw == *num.points[j].line_weight);
    }
  }
}

TEST_CASE("meromorphic P1 field") {
  VarietyModel m = build_p1_meromorphic({Rational(0), Rational(1), Rational(-2), Rational(5)}, Rational(3));
  CHECK(m.points.size() == 4);
  // 3 z (z - 1)(z + 2)(z - 5): derivative at 0 is 3 * (-1)(2)(-5) = 30.
  CHECK(m.points[0].tangent(0, 0) == RatFn(30));
  for (const auto& p : m.points) CHECK(*p.twist_weight == RatFn(1));
  CHECK_THROWS_AS(build_p1_meromorphic({Rational(1), Rational(1)}), MathError);
}

TEST_CASE("diagonal quadratic field on P2 has seven simple zeroes") {
  std::vector<std::vector<Rational>> forms = {
      {Rational(1), Rational(2), Rational(-1)}, {Rational(3), Rational(-1), Rational(2)}, {Rational(0), Rational(5), Rational(1)}};
  VarietyModel m = build_pn_diagonal_quadratic(2, forms);
  CHECK(m.points.size() == 7);
  CHECK(validate(m).ok());
  for (const auto& p : m.points) CHECK(p.twist_weight.has_value());
}
