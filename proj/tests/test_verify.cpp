#include <doctest.h>

#include <cmath>
#include <json.hpp>
#include <numbers>

#include "loccalc/error.hpp"
#include "loccalc/verify.hpp"

using namespace loccalc;

namespace {

constexpr double pi = std::numbers::pi;

FormOnChart odd_density() {
  FormOnChart fs = fubini_study_form();
  return {[fs](ComplexF z) {
            double q = std::norm(z);
            return fs.g(z) * (1 - q) / (1 + q);
          },
          4};
}

ChartFunction identity_field() {
  return [](ComplexF z) { return z; };
}

}  // namespace

TEST_CASE("quadrature of densities on the chart") {
  CHECK(std::abs(integrate_p1_form(fubini_study_form()) - 1.0) < 1e-6);
  CHECK(std::abs(integrate_p1_form(fubini_study_form(2.0)) - 2.0) < 1e-6);
  double coarse = integrate_p1_form(odd_density());
  double fine = integrate_p1_form(odd_density(), {128, 128});
  CHECK(std::abs(coarse) < 1e-6);
  CHECK(std::abs(fine - coarse) < 1e-6);
  CHECK(std::abs(integrate_p1_form(fubini_study_form(), {128, 64}) - integrate_p1_form(fubini_study_form())) < 1e-8);
}

TEST_CASE("quadrature preconditions") {
  FormOnChart slow{[](ComplexF z) { return ComplexF(1 / (1 + std::norm(z)), 0); }, 2};
  CHECK_THROWS_AS(integrate_p1_form(slow), InputError);
  FormOnChart liar{[](ComplexF z) { return ComplexF(1 / (1 + std::norm(z)), 0); }, 4};
  CHECK_THROWS_AS(integrate_p1_form(liar), InputError);
  FormOnChart broken{[](ComplexF z) { return std::abs(z) < 1 ? ComplexF(NAN, 0) : ComplexF(0, 0); }, 4};
  CHECK_THROWS_AS(integrate_p1_form(broken), MathError);
}

TEST_CASE("dbar relation on the Fubini-Study form") {
  FormOnChart fs = fubini_study_form();
  ChartFunction basis = [](ComplexF z) { return ComplexF(1 / (1 + std::norm(z)), 0); };
  ComplexF c = fit_potential(fs, basis, identity_field());
  CHECK(std::abs(c - ComplexF(0, -1 / (2 * pi))) < 1e-8);
  ChartFunction f = [c, basis](ComplexF z) { return c * basis(z); };
  CHECK(dbar_relation_check(fs, f, identity_field()) <= 1e-6);

  double witness = dbar_relation_check(fs, [](ComplexF) { return ComplexF(0, 0); }, identity_field());
  CHECK(witness > 0.01);

  ChartFunction zero_field = [](ComplexF) { return ComplexF(0, 0); };
  CHECK(dbar_relation_check(fs, [](ComplexF) { return ComplexF(2.5, -1); }, zero_field) <= 1e-12);
}

TEST_CASE("complex Duistermaat-Heckman scenario") {
  DhReport r = dh_scenario();
  CHECK(r.report.status == "pass");
  CHECK(std::abs(r.lhs - 1.0) < 1e-6);
  CHECK(std::abs(r.magnitude_rhs - 1.0) < 1e-4);
  CHECK(r.empirical_sign == -1);
  CHECK(r.report.note.find("calibrated sign") != std::string::npos);

  DhReport three = dh_scenario(3.0);
  CHECK(std::abs(three.lhs / r.lhs - 3) < 1e-9);
  CHECK(std::abs(three.magnitude_rhs / r.magnitude_rhs - 3) < 1e-6);

  DhReport shifted = dh_scenario(1.0, 4.0);
  CHECK(shifted.shift_exact);
  CHECK(std::abs(shifted.residue_sum - r.residue_sum) < 1e-12);
  CHECK(shifted.report.status == "pass");
}

TEST_CASE("suite passes and reports JSON lines") {
  auto reports = run_suite();
  CHECK(reports.size() > 30);
  for (const auto& r : reports) {
    INFO(r.name << ": " << r.note);
    CHECK(r.status == "pass");
    auto j = nlohmann::json::parse(r.to_json());
    CHECK(j.contains("name"));
    CHECK(j.contains("lhs"));
    CHECK(j.contains("rhs"));
    CHECK(j.contains("abs_error"));
    CHECK(j.contains("status"));
  }
}

TEST_CASE("fault injection is detected") {
  auto reports = run_suite({true, false});
  int failed = 0;
  for (const auto& r : reports) {
    if (r.name.rfind("int c1(O(1))^", 0) != 0) continue;
    int n = r.name[13] - '0';
    CHECK(r.rhs == (n % 2 == 0 ? "1" : "-1"));
    if (n % 2 == 1) {
      CHECK(r.status == "fail");
      ++failed;
    }
  }
  CHECK(failed == 2);
}

TEST_CASE("empty model scenario warns") {
  auto reports = run_suite({false, true});
  REQUIRE(reports.back().name == "empty-model");
  CHECK(reports.back().status == "warn");
  CHECK(reports.back().note.find("no zeroes") != std::string::npos);
}
