// Multivariate gcd over Q by recursive content / primitive-part reduction, with a
// subresultant pseudo-remainder sequence in the chosen main variable.

#include <algorithm>
#include <limits>

#include "loccalc/error.hpp"
#include "loccalc/polynomial.hpp"

namespace loccalc {

namespace {

// Polynomial in one main variable with coefficients in the remaining ones; index = degree.
using UPoly = std::vector<SparsePoly>;

void strip(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int deg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly to_upoly(const SparsePoly& p, const std::string& x) {
  const auto& vars = p.variables();
  auto pos = static_cast<std::size_t>(std::find(vars.begin(), vars.end(), x) - vars.begin());
  std::vector<std::string> rest_vars;
  for (std::size_t k = 0; k < vars.size(); ++k) {
    if (k != pos) rest_vars.push_back(vars[k]);
  }
  std::vector<std::vector<SparsePoly::Term>> buckets(p.degree(x) + 1);
  for (const auto& t : p.terms()) {
    SparsePoly::Exponents e;
    e.reserve(rest_vars.size());
    for (std::size_t k = 0; k < vars.size(); ++k) {
      if (k != pos) e.push_back(t.exponents[k]);
    }
    std::uint32_t d = pos < vars.size() ? t.exponents[pos] : 0;
    buckets[d].push_back({std::move(e), t.coefficient});
  }
  UPoly out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(SparsePoly::from_terms(rest_vars, std::move(b)));
  strip(out);
  return out;
}

SparsePoly from_upoly(const UPoly& p, const std::string& x) {
  SparsePoly result;
  SparsePoly xv = SparsePoly::variable(x);
  for (int d = deg(p); d >= 0; --d) {
    result = result * xv + p[static_cast<std::size_t>(d)];
  }
  return result;
}

UPoly scale(const UPoly& p, const SparsePoly& c) {
  UPoly out;
  out.reserve(p.size());
  for (const auto& a : p) out.push_back(a * c);
  strip(out);
  return out;
}

UPoly divide_exact(const UPoly& p, const SparsePoly& c) {
  UPoly out;
  out.reserve(p.size());
  for (const auto& a : p) {
    auto q = a.divide_exact(c);
    if (!q) throw MathError("internal: inexact division in subresultant sequence");
    out.push_back(std::move(*q));
  }
  return out;
}

// lc(b)^(deg a - deg b + 1) * a  mod  b
UPoly pseudo_remainder(UPoly a, const UPoly& b) {
  const int db = deg(b);
  const SparsePoly& lb = b.back();
  int e = deg(a) - db + 1;
  while (!a.empty() && deg(a) >= db) {
    SparsePoly la = a.back();
    int shift = deg(a) - db;
    for (auto& c : a) c *= lb;
    for (int i = 0; i <= db; ++i) a[static_cast<std::size_t>(i + shift)] -= la * b[static_cast<std::size_t>(i)];
    strip(a);
    --e;
  }
  if (e > 0 && !a.empty()) a = scale(a, lb.pow(static_cast<std::uint32_t>(e)));
  return a;
}

SparsePoly content(const UPoly& p, SparsePoly seed = SparsePoly()) {
  SparsePoly g = std::move(seed);
  // Smallest coefficients first: they bound the gcd quickly.
  std::vector<const SparsePoly*> order;
  for (const auto& c : p) {
    if (!c.is_zero()) order.push_back(&c);
  }
  std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->size() < b->size(); });
  for (const auto* c : order) {
    g = gcd(g, *c);
    if (g.is_constant() && !g.is_zero()) return SparsePoly(1);
  }
  return g;
}

SparsePoly subresultant_gcd(const SparsePoly& pa, const SparsePoly& pb, const std::string& x) {
  UPoly a = to_upoly(pa, x);
  UPoly b = to_upoly(pb, x);
  if (deg(a) < deg(b)) std::swap(a, b);

  // Only the content gcd is needed up front; the final primitive part absorbs the rest.
  SparsePoly cb = content(b);
  SparsePoly content_gcd = cb.is_constant() ? SparsePoly(1) : content(a, cb);
  if (!cb.is_constant()) b = divide_exact(b, cb);

  SparsePoly g(1), h(1);
  for (;;) {
    int delta = deg(a) - deg(b);
    UPoly r = pseudo_remainder(a, b);
    if (r.empty()) break;
    if (deg(r) == 0) {
      b = UPoly{SparsePoly(1)};
      break;
    }
    a = std::move(b);
    b = divide_exact(r, g * h.pow(static_cast<std::uint32_t>(delta)));
    g = a.back();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      auto q = g.pow(static_cast<std::uint32_t>(delta)).divide_exact(h.pow(static_cast<std::uint32_t>(delta - 1)));
      if (!q) throw MathError("internal: inexact division in subresultant sequence");
      h = std::move(*q);
    }
  }
  SparsePoly cont = content(b);
  UPoly primitive = divide_exact(b, cont);
  return (from_upoly(primitive, x) * content_gcd).monic();
}

std::vector<std::string> intersect(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out;
  for (const auto& v : a) {
    if (std::find(b.begin(), b.end(), v) != b.end()) out.push_back(v);
  }
  return out;
}

// gcd(a, b) when `x` occurs in a but not in b: the gcd divides every x-coefficient of a.
SparsePoly gcd_eliminating(const SparsePoly& a, const SparsePoly& b, const std::string& x) {
  UPoly coeffs = to_upoly(a, x);
  return content(coeffs, b.monic());
}

}  // namespace

SparsePoly gcd(const SparsePoly& a_in, const SparsePoly& b_in) {
  if (a_in.is_zero()) return b_in.monic();
  if (b_in.is_zero()) return a_in.monic();
  if (a_in.is_constant() || b_in.is_constant()) return SparsePoly(1);

  SparsePoly a = a_in.trimmed();
  SparsePoly b = b_in.trimmed();
  const auto& va = a.variables();
  const auto& vb = b.variables();
  for (const auto& v : va) {
    if (std::find(vb.begin(), vb.end(), v) == vb.end()) return gcd_eliminating(a, b, v);
  }
  for (const auto& v : vb) {
    if (std::find(va.begin(), va.end(), v) == va.end()) return gcd_eliminating(b, a, v);
  }
  auto common = intersect(va, vb);

  const SparsePoly& small = a.size() <= b.size() ? a : b;
  const SparsePoly& large = a.size() <= b.size() ? b : a;
  if (auto q = large.divide_exact(small)) return small.monic();

  std::string x;
  std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
  for (const auto& v : common) {
    std::uint32_t d = std::min(a.degree(v), b.degree(v));
    if (d < best) {
      best = d;
      x = v;
    }
  }
  return subresultant_gcd(a, b, x);
}

}  // namespace loccalc
