#include "loccalc/model.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "loccalc/error.hpp"
#include "loccalc/expr.hpp"

namespace loccalc {

bool ValidationReport::ok() const {
  return std::none_of(issues.begin(), issues.end(),
                      [](const auto& i) { return i.severity == ValidationIssue::Severity::Error; });
}

std::vector<std::string> ValidationReport::degenerate_points() const {
  std::vector<std::string> out;
  for (const auto& i : issues) {
    if (i.severity == ValidationIssue::Severity::Error && i.message.find("degenerate") != std::string::npos) {
      out.push_back(i.point);
    }
  }
  return out;
}

ValidationReport validate(const VarietyModel& model) {
  using Severity = ValidationIssue::Severity;
  ValidationReport report;
  if (model.points.empty()) {
    report.issues.push_back({Severity::Warning, "", "no zeroes: every localization sum is 0"});
  }
  std::set<std::string> names;
  for (const auto& p : model.points) {
    if (!names.insert(p.name).second) {
      report.issues.push_back({Severity::Error, p.name, "duplicate point name"});
    }
    if (p.tangent.size() != model.dim) {
      report.issues.push_back({Severity::Error, p.name,
                               "tangent is " + std::to_string(p.tangent.size()) + "x" +
                                   std::to_string(p.tangent.size()) + ", expected dimension " +
                                   std::to_string(model.dim)});
      continue;
    }
    if (det(p.tangent).is_zero()) {
      report.issues.push_back({Severity::Error, p.name, "degenerate zero: det(tangent) = 0"});
    }
    if (p.bundle_endo && p.bundle_endo->size() != model.rank) {
      report.issues.push_back({Severity::Error, p.name,
                               "bundle_endo has size " + std::to_string(p.bundle_endo->size()) +
                                   ", model rank is " + std::to_string(model.rank)});
    }
    if (p.line_weight && model.rank != 1) {
      report.issues.push_back({Severity::Error, p.name, "line_weight requires rank 1"});
    }
  }
  return report;
}

void require_valid(const VarietyModel& model) {
  ValidationReport report = validate(model);
  for (const auto& issue : report.issues) {
    if (issue.severity == ValidationIssue::Severity::Error) {
      throw MathError((issue.point.empty() ? "" : "point " + issue.point + ": ") + issue.message);
    }
  }
}

std::vector<RatFn> symbolic_weights(std::size_t count) {
  std::vector<RatFn> w;
  for (std::size_t i = 0; i < count; ++i) w.push_back(RatFn::variable("l" + std::to_string(i)));
  return w;
}

VarietyModel build_projective_space(std::size_t n, const std::vector<RatFn>& weights, long line_degree) {
  if (n == 0) throw InputError("projective space dimension must be positive");
  if (weights.size() != n + 1) {
    throw InputError("P^" + std::to_string(n) + " needs " + std::to_string(n + 1) + " weights, got " +
                     std::to_string(weights.size()));
  }
  for (std::size_t i = 0; i < weights.size(); ++i) {
    for (std::size_t j = i + 1; j < weights.size(); ++j) {
      if (weights[i] == weights[j]) {
        throw MathError("weights w" + std::to_string(i) + " and w" + std::to_string(j) +
                        " coincide: the fixed points are not nondegenerate");
      }
    }
  }
  VarietyModel m;
  m.dim = n;
  m.rank = 1;
  m.symbolic = std::any_of(weights.begin(), weights.end(), [](const RatFn& w) { return !w.is_constant(); });
  for (std::size_t j = 0; j <= n; ++j) {
    std::vector<RatFn> diag;
    for (std::size_t i = 0; i <= n; ++i) {
      if (i != j) diag.push_back(weights[i] - weights[j]);
    }
    FixedPoint p;
    p.name = "p" + std::to_string(j);
    p.tangent = SquareMatrix::diagonal(diag);
    p.line_weight = weights[j] * RatFn(line_degree);
    m.points.push_back(std::move(p));
  }
  return m;
}

VarietyModel build_projective_space(std::size_t n, long line_degree) {
  return build_projective_space(n, symbolic_weights(n + 1), line_degree);
}

VarietyModel build_point() {
  VarietyModel m;
  m.dim = 0;
  m.rank = 1;
  FixedPoint p;
  p.name = "pt";
  p.tangent = SquareMatrix(0);
  p.line_weight = RatFn(0);
  m.points.push_back(std::move(p));
  return m;
}

VarietyModel build_product(const VarietyModel& a, const VarietyModel& b) {
  require_valid(a);
  require_valid(b);
  auto has_lines = [](const VarietyModel& m) {
    return !m.points.empty() &&
           std::all_of(m.points.begin(), m.points.end(), [](const FixedPoint& p) { return p.line_weight.has_value(); });
  };
  bool lines = has_lines(a) && has_lines(b);
  VarietyModel m;
  m.dim = a.dim + b.dim;
  m.rank = lines ? 1 : 0;
  m.symbolic = a.symbolic || b.symbolic;
  for (const auto& pa : a.points) {
    for (const auto& pb : b.points) {
      FixedPoint p;
      p.name = "(" + pa.name + "," + pb.name + ")";
      p.tangent = SquareMatrix::block_diagonal(pa.tangent, pb.tangent);
      if (lines) p.line_weight = *pa.line_weight + *pb.line_weight;
      m.points.push_back(std::move(p));
    }
  }
  return m;
}

VarietyModel build_p1_meromorphic(const std::vector<Rational>& roots, const Rational& lead) {
  if (roots.size() < 2) throw InputError("a section of T(d) on P^1 with d >= 0 needs at least two roots");
  if (lead.is_zero()) throw InputError("leading coefficient must be nonzero");
  SparsePoly z = SparsePoly::variable("z");
  SparsePoly component(lead);
  for (const auto& r : roots) component *= z - SparsePoly(r);
  SparsePoly slope = component.derivative("z");
  VarietyModel m;
  m.dim = 1;
  m.rank = 0;
  for (std::size_t k = 0; k < roots.size(); ++k) {
    for (std::size_t l = 0; l < k; ++l) {
      if (roots[k] == roots[l]) throw MathError("repeated root " + roots[k].to_string() + ": degenerate zero");
    }
    FixedPoint p;
    p.name = "r" + std::to_string(k);
    Rational jac = slope.evaluate([&](const std::string&) { return roots[k]; });
    p.tangent = SquareMatrix{{RatFn(jac)}};
    p.twist_weight = RatFn(1);
    m.points.push_back(std::move(p));
  }
  return m;
}

namespace {

// One generator of the kernel of a (rows x cols) rational matrix with a 1-dimensional kernel.
std::optional<std::vector<Rational>> kernel_vector(std::vector<std::vector<Rational>> a, std::size_t cols) {
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t p = row;
    while (p < a.size() && a[p][c].is_zero()) ++p;
    if (p == a.size()) continue;
    std::swap(a[row], a[p]);
    Rational inv = Rational(1) / a[row][c];
    for (auto& v : a[row]) v *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][c].is_zero()) continue;
      Rational f = a[r][c];
      for (std::size_t k = 0; k < cols; ++k) a[r][k] -= f * a[row][k];
    }
    pivot_col.push_back(c);
    ++row;
  }
  if (pivot_col.size() + 1 != cols) return std::nullopt;
  std::size_t free = 0;
  while (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end()) ++free;
  std::vector<Rational> x(cols);
  x[free] = Rational(1);
  for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = -a[r][free];
  return x;
}

}  // namespace

VarietyModel build_pn_diagonal_quadratic(std::size_t n, const std::vector<std::vector<Rational>>& forms) {
  if (n == 0 || forms.size() != n + 1) throw InputError("need n+1 linear forms on P^n");
  for (const auto& f : forms) {
    if (f.size() != n + 1) throw InputError("each linear form needs n+1 coefficients");
  }
  // Homogeneous components a_i = z_i * L_i(z).
  std::vector<SparsePoly> zs;
  for (std::size_t i = 0; i <= n; ++i) zs.push_back(SparsePoly::variable("z" + std::to_string(i)));
  std::vector<SparsePoly> a;
  for (std::size_t i = 0; i <= n; ++i) {
    SparsePoly L;
    for (std::size_t k = 0; k <= n; ++k) L += zs[k].scaled(forms[i][k]);
    a.push_back(zs[i] * L);
  }

  VarietyModel m;
  m.dim = n;
  m.rank = 0;
  for (unsigned mask = 1; mask < (1U << (n + 1)); ++mask) {
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i <= n; ++i) {
      if (mask & (1U << i)) support.push_back(i);
    }
    // L_{s0} = L_{s1} = ... restricted to the support coordinates.
    std::vector<std::vector<Rational>> eq;
    for (std::size_t r = 1; r < support.size(); ++r) {
      std::vector<Rational> row;
      for (std::size_t c : support) row.push_back(forms[support[r]][c] - forms[support[0]][c]);
      eq.push_back(std::move(row));
    }
    std::vector<Rational> coords(n + 1);
    if (support.size() == 1) {
      coords[support[0]] = Rational(1);
    } else {
      auto kernel = kernel_vector(eq, support.size());
      if (!kernel) throw MathError("linear forms are not generic: positive-dimensional zero set");
      for (std::size_t k = 0; k < support.size(); ++k) {
        if ((*kernel)[k].is_zero()) throw MathError("linear forms are not generic: zero off its support");
        coords[support[k]] = (*kernel)[k];
      }
    }
    // Affine chart of the first support coordinate, normalized to 1.
    std::size_t chart = support[0];
    Rational scale = Rational(1) / coords[chart];
    for (auto& c : coords) c *= scale;
    std::vector<std::string> local;
    std::vector<Rational> at;
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == chart) continue;
      local.push_back("z" + std::to_string(k));
      at.push_back(coords[k]);
    }
    auto dehomogenize = [&](const SparsePoly& p) { return p.substitute("z" + std::to_string(chart), SparsePoly(1)); };
    SparsePoly ac = dehomogenize(a[chart]);
    SquareMatrix jac(n);
    for (std::size_t r = 0; r < n; ++r) {
      const std::string& xr = local[r];
      SparsePoly component = dehomogenize(a[std::stoul(xr.substr(1))]) - SparsePoly::variable(xr) * ac;
      for (std::size_t c = 0; c < n; ++c) {
        SparsePoly d = component.derivative(local[c]);
        jac(r, c) = RatFn(d.evaluate([&](const std::string& v) {
          auto it = std::find(local.begin(), local.end(), v);
          return at[static_cast<std::size_t>(it - local.begin())];
        }));
      }
    }
    FixedPoint p;
    p.name = "q";
    for (std::size_t i : support) p.name += std::to_string(i);
    p.tangent = std::move(jac);
    p.twist_weight = RatFn(1);
    m.points.push_back(std::move(p));
  }
  return m;
}

namespace {

using nlohmann::json;

std::string expr_text(const RatFn& f) { return f.to_string(); }

json matrix_json(const SquareMatrix& m) {
  json rows = json::array();
  for (const auto& row : m.rows()) {
    json r = json::array();
    for (const auto& e : row) r.push_back(expr_text(e));
    rows.push_back(std::move(r));
  }
  return rows;
}

RatFn entry_from_json(const json& j, const std::string& field) {
  if (j.is_number_integer()) return RatFn(Rational(mpz_class(j.dump()), mpz_class(1)));
  if (!j.is_string()) throw SchemaError(field + ": expected a fraction or expression string");
  try {
    return parse_ratfn(j.get<std::string>());
  } catch (const InputError& e) {
    throw SchemaError(field + ": " + e.what());
  } catch (const MathError& e) {
    throw SchemaError(field + ": " + e.what());
  }
}

SquareMatrix matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) throw SchemaError(field + ": expected an array of rows");
  std::vector<std::vector<RatFn>> rows;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const json& row = j[r];
    std::string rf = field + "[" + std::to_string(r) + "]";
    if (!row.is_array() || row.size() != j.size()) {
      throw SchemaError(rf + ": expected a row of length " + std::to_string(j.size()));
    }
    std::vector<RatFn> entries;
    for (std::size_t c = 0; c < row.size(); ++c) {
      entries.push_back(entry_from_json(row[c], rf + "[" + std::to_string(c) + "]"));
    }
    rows.push_back(std::move(entries));
  }
  return SquareMatrix::from_rows(rows);
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(where + ": missing required field \"" + key + "\"");
  return *it;
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

}  // namespace

std::string model_to_json(const VarietyModel& model) {
  json j;
  j["dim"] = model.dim;
  j["rank"] = model.rank;
  j["symbolic"] = model.symbolic;
  json points = json::array();
  for (const auto& p : model.points) {
    json jp;
    jp["name"] = p.name;
    jp["tangent"] = matrix_json(p.tangent);
    if (p.bundle_endo) jp["bundle_endo"] = matrix_json(*p.bundle_endo);
    if (p.line_weight) jp["line_weight"] = expr_text(*p.line_weight);
    if (p.twist_weight) jp["twist_weight"] = expr_text(*p.twist_weight);
    points.push_back(std::move(jp));
  }
  j["points"] = std::move(points);
  return j.dump(2) + "\n";
}

VarietyModel model_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("line " + std::to_string(line_of(text, e.byte > 0 ? e.byte - 1 : 0)) +
                      ": invalid JSON (" + e.what() + ")");
  }
  if (!j.is_object()) throw SchemaError("model: expected a JSON object");
  VarietyModel m;
  const json& dim = require(j, "dim", "model");
  const json& rank = require(j, "rank", "model");
  if (!dim.is_number_unsigned()) throw SchemaError("dim: expected a nonnegative integer");
  if (!rank.is_number_unsigned()) throw SchemaError("rank: expected a nonnegative integer");
  m.dim = dim.get<std::size_t>();
  m.rank = rank.get<std::size_t>();
  if (auto it = j.find("symbolic"); it != j.end()) {
    if (!it->is_boolean()) throw SchemaError("symbolic: expected true or false");
    m.symbolic = it->get<bool>();
  }
  const json& points = require(j, "points", "model");
  if (!points.is_array()) throw SchemaError("points: expected an array");
  for (std::size_t k = 0; k < points.size(); ++k) {
    std::string where = "points[" + std::to_string(k) + "]";
    const json& jp = points[k];
    if (!jp.is_object()) throw SchemaError(where + ": expected an object");
    FixedPoint p;
    const json& name = require(jp, "name", where);
    if (!name.is_string()) throw SchemaError(where + ".name: expected a string");
    p.name = name.get<std::string>();
    p.tangent = matrix_from_json(require(jp, "tangent", where), where + ".tangent");
    if (p.tangent.size() != m.dim) {
      throw SchemaError(where + ".tangent: expected " + std::to_string(m.dim) + "x" + std::to_string(m.dim));
    }
    if (auto it = jp.find("bundle_endo"); it != jp.end()) {
      p.bundle_endo = matrix_from_json(*it, where + ".bundle_endo");
      if (p.bundle_endo->size() != m.rank) {
        throw SchemaError(where + ".bundle_endo: expected " + std::to_string(m.rank) + "x" + std::to_string(m.rank));
      }
    }
    if (auto it = jp.find("line_weight"); it != jp.end()) p.line_weight = entry_from_json(*it, where + ".line_weight");
    if (auto it = jp.find("twist_weight"); it != jp.end()) {
      p.twist_weight = entry_from_json(*it, where + ".twist_weight");
    }
    m.points.push_back(std::move(p));
  }
  return m;
}

VarietyModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open model file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return model_from_json(buffer.str());
}

void save_model(const VarietyModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write model file " + path.string());
  out << model_to_json(model);
}

}  // namespace loccalc
