#include "loccalc/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "loccalc/error.hpp"
#include "loccalc/localize.hpp"
#include "loccalc/verify.hpp"

namespace loccalc {

namespace {

using nlohmann::json;

struct ModelFlags {
  std::optional<std::size_t> pn;
  std::string weights;
  std::string product;
  std::string model;
  long degree = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--pn", pn, "built-in P^N with the torus field");
    cmd->add_option("--weights", weights, "comma-separated weights for --pn (symbolic when omitted)");
    cmd->add_option("--product", product, "product of projective spaces, e.g. \"1,2\"");
    cmd->add_option("--model", model, "model file (JSON)");
    cmd->add_option("--degree", degree, "line bundle O(d) for built-in models");
  }
};

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

std::vector<RatFn> weights_from(std::size_t n, std::size_t first_index, const std::string& text) {
  if (text.empty()) {
    std::vector<RatFn> w;
    for (std::size_t k = 0; k <= n; ++k) w.push_back(RatFn::variable("l" + std::to_string(first_index + k)));
    return w;
  }
  std::vector<RatFn> w;
  for (const auto& item : split(text)) w.push_back(parse_ratfn(item));
  return w;
}

VarietyModel select_model(const ModelFlags& f) {
  int chosen = (f.pn ? 1 : 0) + (f.product.empty() ? 0 : 1) + (f.model.empty() ? 0 : 1);
  if (chosen != 1) throw InputError("choose exactly one of --pn, --product, --model");
  if (f.pn) return build_projective_space(*f.pn, weights_from(*f.pn, 0, f.weights), f.degree);
  if (!f.product.empty()) {
    if (!f.weights.empty()) throw InputError("--weights applies to --pn only");
    VarietyModel m = build_point();
    std::size_t next = 0;
    for (const auto& item : split(f.product)) {
      std::size_t n = std::stoul(item);
      m = build_product(m, build_projective_space(n, weights_from(n, next, ""), f.degree));
      next += n + 1;
    }
    return m;
  }
  return load_model(f.model);
}

ChernPoly read_phi(const std::string& text, std::size_t classes, std::size_t weight) {
  std::string prefix = text.find('g') != std::string::npos ? "g" : "c";
  return ChernPoly::parse(text, classes, prefix, weight);
}

void print_result(const LocalizationResult& r, bool as_json, bool points, std::ostream& out) {
  if (as_json) {
    json j;
    j["value"] = r.value.to_string();
    j["tau_exponent"] = r.tau_exponent;
    j["t_exponent"] = r.t_exponent;
    json pp = json::array();
    for (const auto& [name, s] : r.per_point) pp.push_back({{"point", name}, {"summand", s.to_string()}});
    j["per_point"] = std::move(pp);
    out << j.dump(2) << "\n";
    return;
  }
  out << r.value.to_string() << "\n";
  if (points) {
    for (const auto& [name, s] : r.per_point) out << "  " << name << "\t" << s.to_string() << "\n";
    out << "  tau^" << r.tau_exponent << " t^" << r.t_exponent << "\n";
  }
}

std::size_t default_samples() {
  const char* env = std::getenv("LOC_CALC_SAMPLES");
  if (!env || !*env) return 256;
  char* end = nullptr;
  unsigned long v = std::strtoul(env, &end, 10);
  if (*end != '\0' || v == 0 || (v & (v - 1)) != 0) {
    throw InputError(std::string("LOC_CALC_SAMPLES must be a power of two, got '") + env + "'");
  }
  return v;
}

std::string complex_text(ComplexF z) {
  auto snap = [](double x) { return std::abs(x) <= 1e-12 ? 0.0 : x; };
  z = ComplexF(snap(z.real()), snap(z.imag()));
  char buf[96];
  if (z.imag() == 0) {
    std::snprintf(buf, sizeof buf, "%.9f", z.real());
  } else {
    std::snprintf(buf, sizeof buf, "%.9f %c %.9fi", z.real(), z.imag() < 0 ? '-' : '+', std::abs(z.imag()));
  }
  return buf;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact calculator for holomorphic localization formulas", "loc-calc"};
  app.require_subcommand(1);
  bool as_json = false;
  bool points = false;
  app.add_flag("--json", as_json, "machine-readable output");

  ModelFlags bott_flags, cl_flags, bb_flags, model_flags;
  std::string phi;

  auto* bott = app.add_subcommand("bott", "Bott sum of a Chern polynomial in c1..cn");
  bott_flags.attach(bott);
  bott->add_option("--phi", phi, "integrand, e.g. \"c1^2\"")->required();
  bott->add_flag("--points", points, "show per-point summands");
  bott->add_flag("--json", as_json);

  auto* cl = app.add_subcommand("cl", "Carrell-Liebermann sum of a polynomial in the bundle classes");
  cl_flags.attach(cl);
  cl->add_option("--phi", phi, "bundle polynomial, e.g. \"c1^2\"")->required();
  cl->add_flag("--points", points);
  cl->add_flag("--json", as_json);

  std::string roots;
  std::string lead = "1";
  auto* bb = app.add_subcommand("baumbott", "Baum-Bott sum for a meromorphic field");
  bb_flags.attach(bb);
  bb->add_option("--p1-roots", roots, "roots of a factored field on P^1, e.g. \"0,1,-2\"");
  bb->add_option("--lead", lead, "leading coefficient of the factored field");
  bb->add_option("--phi", phi, "integrand in g1..gn")->required();
  bb->add_flag("--points", points);
  bb->add_flag("--json", as_json);

  std::size_t dim = 1;
  std::vector<std::string> components;
  std::string numerator = "1";
  double radius = 0.5;
  std::optional<std::size_t> samples;
  auto* res = app.add_subcommand("residue", "local residue at the origin by contour quadrature");
  res->add_option("--dim", dim, "number of variables z1..zn")->required();
  res->add_option("--a", components, "component a_i (repeat once per variable)")->required();
  res->add_option("--s", numerator, "numerator s");
  res->add_option("--radius", radius, "torus radius");
  res->add_option("--samples", samples, "nodes per circle (power of two >= 64)");
  res->add_flag("--json", as_json);

  double scale = 1.0, shift = 0.0;
  auto* dh = app.add_subcommand("dh", "complex Duistermaat-Heckman check on P^1");
  dh->add_option("--scale", scale, "multiple of the Fubini-Study form");
  dh->add_option("--shift", shift, "constant added to the potential f");
  dh->add_flag("--json", as_json);

  bool fault = false, empty = false;
  auto* ver = app.add_subcommand("verify", "run the scenario suite");
  ver->add_flag("--fault-injection", fault, "use the flipped linearization sign");
  ver->add_flag("--empty-model", empty, "register a model without zeroes");
  ver->add_flag("--json", as_json);

  std::string output;
  auto* mod = app.add_subcommand("model", "validate or convert model files");
  mod->require_subcommand(1);
  auto* validate_cmd = mod->add_subcommand("validate", "check a model");
  model_flags.attach(validate_cmd);
  validate_cmd->add_flag("--json", as_json);
  auto* convert_cmd = mod->add_subcommand("convert", "write a model as JSON");
  model_flags.attach(convert_cmd);
  convert_cmd->add_option("--out", output, "output file (standard output when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (bott->parsed()) {
      VarietyModel m = select_model(bott_flags);
      print_result(bott_sum(m, read_phi(phi, m.dim, m.dim)), as_json, points, out);
    } else if (cl->parsed()) {
      VarietyModel m = select_model(cl_flags);
      print_result(carrell_liebermann_sum(m, read_phi(phi, m.rank, m.dim)), as_json, points, out);
    } else if (bb->parsed()) {
      VarietyModel m;
      if (!roots.empty()) {
        std::vector<Rational> r;
        for (const auto& item : split(roots)) r.push_back(parse_ratfn(item).constant_value());
        m = build_p1_meromorphic(r, parse_ratfn(lead).constant_value());
      } else {
        m = select_model(bb_flags);
      }
      print_result(baum_bott_sum(m, read_phi(phi, m.dim, m.dim)), as_json, points, out);
    } else if (res->parsed()) {
      ContourOptions opts{radius, samples ? *samples : default_samples()};
      ComplexF value = residue_contour_numeric(ResidueProblem::parse(dim, components, numerator), opts);
      if (as_json) {
        out << json{{"re", value.real()}, {"im", value.imag()}, {"radius", opts.radius}, {"samples", opts.samples}}.dump()
            << "\n";
      } else {
        out << complex_text(value) << "\n";
      }
    } else if (dh->parsed()) {
      DhReport r = dh_scenario(scale, shift);
      if (as_json) {
        out << r.report.to_json() << "\n";
      } else {
        out << "integral of omega     " << r.lhs << "\n"
            << "|2 pi sum f/J|        " << r.magnitude_rhs << "\n"
            << "(-2 pi i) sum f/J     " << complex_text(r.formula_rhs) << "\n"
            << "calibrated sign       " << r.empirical_sign << "\n"
            << "dbar residual         " << r.dbar_residual << "\n"
            << "status                " << r.report.status << "\n";
      }
      if (!r.report.passed()) return 1;
    } else if (ver->parsed()) {
      auto reports = run_suite({fault, empty});
      bool ok = true;
      for (const auto& r : reports) {
        ok = ok && r.passed();
        if (as_json) {
          out << r.to_json() << "\n";
        } else {
          std::string tag = r.status == "pass" ? "PASS" : r.status == "warn" ? "WARN" : "FAIL";
          out << tag << "  " << r.name << "  lhs=" << r.lhs << "  rhs=" << r.rhs << "  err=" << r.abs_error;
          if (!r.note.empty()) out << "  (" << r.note << ")";
          out << "\n";
        }
      }
      return ok ? 0 : 1;
    } else if (validate_cmd->parsed()) {
      ValidationReport report = validate(select_model(model_flags));
      if (as_json) {
        json issues = json::array();
        for (const auto& i : report.issues) {
          issues.push_back({{"severity", i.severity == ValidationIssue::Severity::Error ? "error" : "warning"},
                            {"point", i.point},
                            {"message", i.message}});
        }
        out << json{{"ok", report.ok()}, {"issues", issues}}.dump(2) << "\n";
      } else {
        for (const auto& i : report.issues) {
          out << (i.severity == ValidationIssue::Severity::Error ? "error" : "warning") << ": "
              << (i.point.empty() ? "" : i.point + ": ") << i.message << "\n";
        }
        out << (report.ok() ? "valid" : "invalid") << "\n";
      }
      return report.ok() ? 0 : 1;
    } else if (convert_cmd->parsed()) {
      VarietyModel m = select_model(model_flags);
      if (output.empty()) {
        out << model_to_json(m);
      } else {
        save_model(m, output);
      }
    }
  } catch (const InputError& e) {
    err << "loc-calc: " << e.what() << "\n";
    return 2;
  } catch (const MathError& e) {
    err << "loc-calc: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "loc-calc: invalid number: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace loccalc
