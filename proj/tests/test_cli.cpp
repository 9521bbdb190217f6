#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <sstream>

#include "loccalc/cli.hpp"
#include "loccalc/model.hpp"

using namespace loccalc;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "loc-calc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("bott from the command line") {
  Outcome r = call({"bott", "--pn", "2", "--phi", "c1^2"});
  CHECK(r.code == 0);
  CHECK(r.out == "9\n");
  CHECK(call({"bott", "--pn", "3", "--weights", "0,1,3,7", "--phi", "c1*c2"}).out == "24\n");
  CHECK(call({"bott", "--product", "1,1", "--phi", "c2"}).out == "4\n");
}

TEST_CASE("json output") {
  Outcome r = call({"bott", "--pn", "2", "--phi", "c2", "--json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["value"] == "3");
  CHECK(j["tau_exponent"] == 0);
  CHECK(j["t_exponent"] == 0);
  CHECK(j["per_point"].size() == 3);
}

TEST_CASE("other engines") {
  CHECK(call({"cl", "--pn", "2", "--degree", "3", "--phi", "c1^2"}).out == "9\n");
  CHECK(call({"baumbott", "--p1-roots", "0,1,-2,5", "--phi", "g1"}).out == "4\n");
  CHECK(call({"residue", "--dim", "1", "--a", "z1^2", "--s", "z1", "--radius", "0.5"}).out == "1.000000000\n");
  CHECK(call({"residue", "--dim", "2", "--a", "z1^2", "--a", "z2^3", "--s", "z1*z2^2"}).out == "1.000000000\n");
  CHECK(call({"residue", "--dim", "1", "--a", "z1", "--s", "i"}).out == "0.000000000 + 1.000000000i\n");
  Outcome dh = call({"dh"});
  CHECK(dh.code == 0);
  CHECK(dh.out.find("calibrated sign       -1") != std::string::npos);
}

TEST_CASE("verify reports and exit codes") {
  Outcome ok = call({"verify", "--json"});
  CHECK(ok.code == 0);
  std::istringstream lines(ok.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    auto j = nlohmann::json::parse(line);
    CHECK(j["status"] == "pass");
    ++count;
  }
  CHECK(count > 30);
  Outcome fault = call({"verify", "--fault-injection"});
  CHECK(fault.code == 1);
  CHECK(fault.out.find("FAIL  int c1(O(1))^1 over P1  lhs=1  rhs=-1") != std::string::npos);
  Outcome empty = call({"verify", "--empty-model"});
  CHECK(empty.code == 0);
  CHECK(empty.out.find("WARN  empty-model") != std::string::npos);
}

TEST_CASE("usage and input errors exit with 2") {
  Outcome syntax = call({"bott", "--pn", "2", "--phi", "c1 ** 2"});
  CHECK(syntax.code == 2);
  CHECK(syntax.err.find("column 5") != std::string::npos);
  CHECK(call({}).code == 2);
  CHECK(call({"bott", "--pn", "2"}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"bott", "--phi", "c1"}).code == 2);
  CHECK(call({"bott", "--pn", "2", "--phi", "c7"}).code == 2);
  CHECK(call({"bott", "--model", "/nonexistent/model.json", "--phi", "c1"}).code == 2);
  CHECK(call({"residue", "--dim", "1", "--a", "z1", "--samples", "100"}).code == 2);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("computation errors exit with 1") {
  CHECK(call({"bott", "--pn", "1", "--weights", "2,2", "--phi", "c1"}).code == 1);
  CHECK(call({"bott", "--pn", "2", "--phi", "c1"}).code == 1);
  CHECK(call({"residue", "--dim", "1", "--a", "z1*(z1 - 1/2)", "--radius", "0.5"}).code == 1);
}

TEST_CASE("sample count from the environment") {
  setenv("LOC_CALC_SAMPLES", "100", 1);
  CHECK(call({"residue", "--dim", "1", "--a", "z1"}).code == 2);
  setenv("LOC_CALC_SAMPLES", "128", 1);
  Outcome r = call({"residue", "--dim", "1", "--a", "z1", "--json"});
  unsetenv("LOC_CALC_SAMPLES");
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["samples"] == 128);
}

TEST_CASE("model files through the command line") {
  auto path = std::filesystem::temp_directory_path() / "loccalc_cli_model.json";
  CHECK(call({"model", "convert", "--pn", "2", "--weights", "0,1,3", "--out", path.string()}).code == 0);
  CHECK(load_model(path) == build_projective_space(2, {RatFn(0), RatFn(1), RatFn(3)}));
  CHECK(call({"bott", "--model", path.string(), "--phi", "c1^2"}).out == "9\n");
  Outcome v = call({"model", "validate", "--model", path.string()});
  CHECK(v.code == 0);
  CHECK(v.out == "valid\n");

  VarietyModel bad = build_projective_space(2, {RatFn(0), RatFn(1), RatFn(3)});
  bad.points[2].tangent(1, 1) = RatFn(0);
  save_model(bad, path);
  Outcome invalid = call({"model", "validate", "--model", path.string()});
  CHECK(invalid.code == 1);
  CHECK(invalid.out.find("degenerate") != std::string::npos);

  Outcome json_out = call({"model", "convert", "--pn", "1"});
  CHECK(model_from_json(json_out.out) == build_projective_space(1));
  std::filesystem::remove(path);
}
