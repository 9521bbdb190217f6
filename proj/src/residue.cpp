#include "loccalc/residue.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "loccalc/error.hpp"

namespace loccalc {

ResidueProblem ResidueProblem::parse(std::size_t n, const std::vector<std::string>& components,
                                     const std::string& numerator) {
  if (components.size() != n) {
    throw InputError("expected " + std::to_string(n) + " components, got " + std::to_string(components.size()));
  }
  ExprContext ctx = ExprContext::residue(n);
  ResidueProblem p;
  p.n = n;
  for (const auto& text : components) p.components.push_back(to_complex_poly(parse_expr(text, ctx)));
  p.numerator = to_complex_poly(parse_expr(numerator, ctx));
  return p;
}

namespace {

void collect(const SparsePoly& part, ComplexF unit, std::size_t n, std::map<std::vector<std::uint32_t>, ComplexF>& out) {
  std::vector<std::size_t> index;
  for (const auto& v : part.variables()) {
    std::size_t k = 0;
    if (v.size() > 1 && v[0] == 'z') k = std::stoul(v.substr(1));
    if (k < 1 || k > n) throw InputError("'" + v + "' is not a variable z1..z" + std::to_string(n));
    index.push_back(k - 1);
  }
  for (const auto& t : part.terms()) {
    std::vector<std::uint32_t> e(n, 0);
    for (std::size_t k = 0; k < index.size(); ++k) e[index[k]] = t.exponents[k];
    out[e] += unit * t.coefficient.to_double();
  }
}

}  // namespace

ComplexEvaluator::ComplexEvaluator(const ComplexPoly& p, std::size_t n) {
  std::map<std::vector<std::uint32_t>, ComplexF> merged;
  collect(p.real, ComplexF(1, 0), n, merged);
  collect(p.imag, ComplexF(0, 1), n, merged);
  root_ = build({merged.begin(), merged.end()}, 0, n);
}

ComplexEvaluator::Node ComplexEvaluator::build(std::vector<std::pair<std::vector<std::uint32_t>, ComplexF>> terms,
                                               std::size_t var, std::size_t n) {
  Node node;
  if (var == n) {
    for (const auto& [e, c] : terms) node.constant += c;
    return node;
  }
  std::uint32_t top = 0;
  for (const auto& [e, c] : terms) top = std::max(top, e[var]);
  std::vector<std::vector<std::pair<std::vector<std::uint32_t>, ComplexF>>> by_power(top + 1);
  for (auto& t : terms) by_power[t.first[var]].push_back(std::move(t));
  for (auto& group : by_power) node.coefficients.push_back(build(std::move(group), var + 1, n));
  return node;
}

ComplexF ComplexEvaluator::eval(const Node& node, const ComplexF* z, std::size_t var) {
  if (node.coefficients.empty()) return node.constant;
  ComplexF acc = eval(node.coefficients.back(), z, var + 1);
  for (std::size_t k = node.coefficients.size() - 1; k-- > 0;) acc = acc * z[var] + eval(node.coefficients[k], z, var + 1);
  return acc;
}

ComplexF ComplexEvaluator::operator()(const ComplexF* z) const { return eval(root_, z, 0); }

RatFn residue_nondegenerate(const RatFn& s0, const SquareMatrix& jacobian) {
  RatFn d = det(jacobian);
  if (d.is_zero()) {
    throw MathError("degenerate zero: Jacobian determinant vanishes; use the numeric contour oracle");
  }
  return s0 / d;
}

namespace {

bool power_of_two(std::size_t k) { return k != 0 && (k & (k - 1)) == 0; }

struct Grid {
  std::size_t n;
  std::size_t samples;
  std::vector<std::vector<ComplexF>> points;   // per variable
  std::vector<std::vector<ComplexF>> offsets;  // z_k - center_k

  void at(std::size_t flat, ComplexF* z, ComplexF& shift) const {
    shift = 1.0;
    for (std::size_t k = n; k-- > 0;) {
      std::size_t i = flat % samples;
      flat /= samples;
      z[k] = points[k][i];
      shift *= offsets[k][i];
    }
  }
};

struct Sweep {
  ComplexF sum;
  double min_modulus = INFINITY;
  double max_modulus = 0;
};

template <class F>
Sweep pairwise(std::size_t lo, std::size_t hi, const F& sample) {
  if (hi - lo <= 64) {
    Sweep s;
    for (std::size_t k = lo; k < hi; ++k) {
      auto [value, modulus] = sample(k);
      s.sum += value;
      s.min_modulus = std::min(s.min_modulus, modulus);
      s.max_modulus = std::max(s.max_modulus, modulus);
    }
    return s;
  }
  std::size_t mid = lo + (hi - lo) / 2;
  Sweep a = pairwise(lo, mid, sample);
  Sweep b = pairwise(mid, hi, sample);
  return {a.sum + b.sum, std::min(a.min_modulus, b.min_modulus), std::max(a.max_modulus, b.max_modulus)};
}

}  // namespace

ComplexF residue_contour_numeric(const ResidueProblem& p, const ContourOptions& options) {
  const std::size_t n = p.n;
  if (n < 1 || n > 3) throw InputError("numeric residues support dimension 1 to 3, got " + std::to_string(n));
  if (p.components.size() != n) throw InputError("residue problem needs one component per variable");
  if (!(options.radius > 0) || !std::isfinite(options.radius)) throw InputError("radius must be positive");
  if (options.samples < 64 || !power_of_two(options.samples)) {
    throw InputError("samples must be a power of two >= 64, got " + std::to_string(options.samples));
  }
  std::vector<ComplexF> center = p.center.empty() ? std::vector<ComplexF>(n) : p.center;
  if (center.size() != n) throw InputError("center has wrong dimension");

  std::vector<ComplexEvaluator> a;
  for (const auto& c : p.components) a.emplace_back(c, n);
  ComplexEvaluator s(p.numerator, n);

  for (std::size_t k = 0; k < n; ++k) {
    bool origin = p.center.empty();
    if (origin) {
      const ComplexPoly& c = p.components[k];
      if (!c.real.constant_term().is_zero() || !c.imag.constant_term().is_zero()) {
        throw MathError("component a" + std::to_string(k + 1) + " does not vanish at the center");
      }
    } else if (std::abs(a[k](center.data())) > 1e-12) {
      throw MathError("component a" + std::to_string(k + 1) + " does not vanish at the center");
    }
  }

  Grid grid{n, options.samples, {}, {}};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<ComplexF> pts, offs;
    for (std::size_t i = 0; i < options.samples; ++i) {
      double theta = 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(options.samples);
      ComplexF off = std::polar(options.radius, theta);
      offs.push_back(off);
      pts.push_back(center[k] + off);
    }
    grid.points.push_back(std::move(pts));
    grid.offsets.push_back(std::move(offs));
  }

  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) total *= options.samples;
  Sweep sweep = pairwise(0, total, [&](std::size_t flat) {
    ComplexF z[3];
    ComplexF shift;
    grid.at(flat, z, shift);
    ComplexF den = 1.0;
    for (const auto& ak : a) den *= ak(z);
    ComplexF value = s(z) * shift / den;
    return std::pair<ComplexF, double>{value, std::abs(den)};
  });
  double scale = sweep.max_modulus > 0 ? sweep.max_modulus : 1.0;
  if (!(sweep.min_modulus >= 1e-8 * scale)) {
    throw MathError("a1...an nearly vanishes on the torus of radius " + std::to_string(options.radius) +
                    " (min modulus " + std::to_string(sweep.min_modulus) + "); try a different radius");
  }
  ComplexF result = sweep.sum / static_cast<double>(total);
  if (!std::isfinite(result.real()) || !std::isfinite(result.imag())) throw MathError("non-finite residue");
  return result;
}

ResidueTotal residue_total(const std::vector<NondegenerateZero>& zeroes,
                           const std::vector<ResidueProblem>& degenerate, const ContourOptions& options) {
  ResidueTotal out{RatFn(), ComplexF()};
  for (const auto& z : zeroes) out.exact += residue_nondegenerate(z.value, z.jacobian);
  for (const auto& p : degenerate) out.numeric += residue_contour_numeric(p, options);
  return out;
}

}  // namespace loccalc
