#include "loccalc/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <tuple>

#include "loccalc/error.hpp"

namespace loccalc {

namespace {

struct VarKey {
  int cls;
  std::string_view prefix;
  long index;
};

VarKey classify(std::string_view name) {
  if (name == "t") return {0, name, -1};
  if (name == "s") return {2, name, -1};
  std::size_t cut = name.size();
  while (cut > 0 && std::isdigit(static_cast<unsigned char>(name[cut - 1]))) --cut;
  std::string_view prefix = name.substr(0, cut);
  long index = -1;
  if (cut < name.size() && name.size() - cut < 10) index = std::stol(std::string(name.substr(cut)));
  if (prefix == "l" && index >= 0) return {1, prefix, index};
  return {3, prefix, index};
}

struct GrlexDesc {
  bool operator()(const SparsePoly::Exponents& a, const SparsePoly::Exponents& b) const {
    return grlex_greater(a, b);
  }
};

using TermMap = std::map<SparsePoly::Exponents, Rational, GrlexDesc>;

std::vector<std::uint32_t> index_map(const std::vector<std::string>& from,
                                     const std::vector<std::string>& to) {
  std::vector<std::uint32_t> out(from.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    while (j < to.size() && to[j] != from[i]) ++j;
    if (j == to.size()) throw MathError("variable '" + from[i] + "' missing from target list");
    out[i] = static_cast<std::uint32_t>(j);
  }
  return out;
}

}  // namespace

bool variable_less(std::string_view a, std::string_view b) {
  VarKey ka = classify(a);
  VarKey kb = classify(b);
  if (std::tie(ka.cls, ka.prefix, ka.index) != std::tie(kb.cls, kb.prefix, kb.index)) {
    return std::tie(ka.cls, ka.prefix, ka.index) < std::tie(kb.cls, kb.prefix, kb.index);
  }
  return a < b;
}

bool grlex_greater(const SparsePoly::Exponents& a, const SparsePoly::Exponents& b) {
  std::uint64_t da = 0, db = 0;
  for (auto e : a) da += e;
  for (auto e : b) db += e;
  if (da != db) return da > db;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

std::vector<std::string> merge_variables(const std::vector<std::string>& a,
                                         const std::vector<std::string>& b) {
  if (a == b) return a;
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && variable_less(a[i], b[j]))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || variable_less(b[j], a[i])) {
      out.push_back(b[j++]);
    } else {
      out.push_back(a[i++]);
      ++j;
    }
  }
  return out;
}

SparsePoly::SparsePoly(const Rational& constant) {
  if (!constant.is_zero()) terms_.push_back({{}, constant});
}

SparsePoly SparsePoly::variable(const std::string& name) {
  SparsePoly p;
  p.vars_ = {name};
  p.terms_.push_back({{1}, Rational(1)});
  return p;
}

SparsePoly SparsePoly::from_terms(std::vector<std::string> variables, std::vector<Term> terms) {
  std::vector<std::string> sorted = variables;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return variable_less(a, b); });
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw MathError("duplicate variable in polynomial construction");
  }
  auto map = index_map(variables, sorted);
  TermMap acc;
  for (auto& term : terms) {
    if (term.exponents.size() != variables.size()) throw MathError("exponent vector length mismatch");
    Exponents e(sorted.size(), 0);
    for (std::size_t i = 0; i < variables.size(); ++i) e[map[i]] = term.exponents[i];
    acc[std::move(e)] += term.coefficient;
  }
  SparsePoly p;
  p.vars_ = std::move(sorted);
  for (auto& [e, c] : acc) {
    if (!c.is_zero()) p.terms_.push_back({e, c});
  }
  return p;
}

bool SparsePoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (auto e : terms_.front().exponents) {
    if (e != 0) return false;
  }
  return true;
}

Rational SparsePoly::constant_value() const {
  if (!is_constant()) throw MathError("polynomial '" + to_string() + "' is not constant");
  return terms_.empty() ? Rational(0) : terms_.front().coefficient;
}

Rational SparsePoly::constant_term() const {
  if (terms_.empty()) return Rational(0);
  const Term& last = terms_.back();
  for (auto e : last.exponents) {
    if (e != 0) return Rational(0);
  }
  return last.coefficient;
}

const SparsePoly::Term& SparsePoly::leading_term() const {
  if (terms_.empty()) throw MathError("leading term of the zero polynomial");
  return terms_.front();
}

const Rational& SparsePoly::leading_coefficient() const { return leading_term().coefficient; }

std::uint32_t SparsePoly::total_degree() const {
  if (terms_.empty()) return 0;
  std::uint32_t d = 0;
  for (auto e : terms_.front().exponents) d += e;
  return d;
}

std::uint32_t SparsePoly::degree(std::string_view var) const {
  auto it = std::find(vars_.begin(), vars_.end(), var);
  if (it == vars_.end()) return 0;
  std::size_t k = static_cast<std::size_t>(it - vars_.begin());
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exponents[k]);
  return d;
}

std::vector<std::string> SparsePoly::used_variables() const {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < vars_.size(); ++k) {
    for (const auto& t : terms_) {
      if (t.exponents[k] != 0) {
        out.push_back(vars_[k]);
        break;
      }
    }
  }
  return out;
}

SparsePoly SparsePoly::with_variables(const std::vector<std::string>& variables) const {
  if (variables == vars_) return *this;
  std::vector<std::string> used = used_variables();
  auto map = index_map(used, variables);
  std::vector<std::uint32_t> src;
  for (const auto& u : used) {
    src.push_back(static_cast<std::uint32_t>(std::find(vars_.begin(), vars_.end(), u) - vars_.begin()));
  }
  SparsePoly p;
  p.vars_ = variables;
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Exponents e(variables.size(), 0);
    for (std::size_t i = 0; i < used.size(); ++i) e[map[i]] = t.exponents[src[i]];
    p.terms_.push_back({std::move(e), t.coefficient});
  }
  // Embedding preserves grlex order because the relative variable order is unchanged.
  return p;
}

SparsePoly SparsePoly::trimmed() const { return with_variables(used_variables()); }

SparsePoly SparsePoly::operator-() const {
  SparsePoly p = *this;
  for (auto& t : p.terms_) t.coefficient = -t.coefficient;
  return p;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  auto vars = merge_variables(vars_, o.vars_);
  SparsePoly a = with_variables(vars);
  SparsePoly b = o.with_variables(vars);
  std::vector<Term> out;
  out.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    if (j == b.terms_.size() ||
        (i < a.terms_.size() && grlex_greater(a.terms_[i].exponents, b.terms_[j].exponents))) {
      out.push_back(std::move(a.terms_[i++]));
    } else if (i == a.terms_.size() || grlex_greater(b.terms_[j].exponents, a.terms_[i].exponents)) {
      out.push_back(b.terms_[j++]);
    } else {
      Rational c = a.terms_[i].coefficient + b.terms_[j].coefficient;
      if (!c.is_zero()) out.push_back({std::move(a.terms_[i].exponents), std::move(c)});
      ++i;
      ++j;
    }
  }
  vars_ = std::move(vars);
  terms_ = std::move(out);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) { return *this += -o; }

SparsePoly operator*(const SparsePoly& x, const SparsePoly& y) {
  if (x.terms_.empty() || y.terms_.empty()) return SparsePoly();
  auto vars = merge_variables(x.vars_, y.vars_);
  SparsePoly a = x.with_variables(vars);
  SparsePoly b = y.with_variables(vars);
  if (a.is_constant()) return b.scaled(a.terms_.front().coefficient);
  if (b.is_constant()) return a.scaled(b.terms_.front().coefficient);
  TermMap acc;
  SparsePoly::Exponents scratch(vars.size());
  mpq_class prod;
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      for (std::size_t k = 0; k < vars.size(); ++k) scratch[k] = ta.exponents[k] + tb.exponents[k];
      prod = ta.coefficient.raw() * tb.coefficient.raw();
      auto it = acc.find(scratch);
      if (it == acc.end()) {
        acc.emplace(scratch, Rational(prod));
      } else {
        it->second += Rational(prod);
      }
    }
  }
  SparsePoly p;
  p.vars_ = std::move(vars);
  p.terms_.reserve(acc.size());
  for (auto& [e, c] : acc) {
    if (!c.is_zero()) p.terms_.push_back({e, std::move(c)});
  }
  return p;
}

SparsePoly& SparsePoly::operator*=(const SparsePoly& o) { return *this = *this * o; }

SparsePoly SparsePoly::scaled(const Rational& factor) const {
  if (factor.is_zero()) return SparsePoly();
  SparsePoly p = *this;
  for (auto& t : p.terms_) t.coefficient *= factor;
  return p;
}

SparsePoly SparsePoly::pow(std::uint32_t exponent) const {
  SparsePoly result(Rational(1));
  SparsePoly base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

SparsePoly SparsePoly::derivative(std::string_view var) const {
  auto it = std::find(vars_.begin(), vars_.end(), var);
  if (it == vars_.end()) return SparsePoly();
  std::size_t k = static_cast<std::size_t>(it - vars_.begin());
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.exponents[k] == 0) continue;
    Term d = t;
    d.coefficient *= Rational(static_cast<long>(t.exponents[k]));
    d.exponents[k] -= 1;
    out.push_back(std::move(d));
  }
  return from_terms(vars_, std::move(out));
}

SparsePoly SparsePoly::substitute(std::string_view var, const SparsePoly& value) const {
  auto it = std::find(vars_.begin(), vars_.end(), var);
  if (it == vars_.end()) return *this;
  std::size_t k = static_cast<std::size_t>(it - vars_.begin());
  // Group by power of `var`, then evaluate with Horner.
  std::map<std::uint32_t, std::vector<Term>> by_power;
  for (const auto& t : terms_) {
    Term rest = t;
    rest.exponents[k] = 0;
    by_power[t.exponents[k]].push_back(std::move(rest));
  }
  SparsePoly result;
  std::uint32_t current = by_power.rbegin()->first;
  for (auto p = by_power.rbegin(); p != by_power.rend(); ++p) {
    while (current > p->first) {
      result *= value;
      --current;
    }
    result += from_terms(vars_, p->second);
  }
  while (current > 0) {
    result *= value;
    --current;
  }
  return result.trimmed();
}

Rational SparsePoly::evaluate(const std::function<Rational(const std::string&)>& value_of) const {
  std::vector<Rational> values;
  for (const auto& v : vars_) values.push_back(value_of(v));
  Rational sum;
  for (const auto& t : terms_) {
    Rational term = t.coefficient;
    for (std::size_t k = 0; k < vars_.size(); ++k) {
      if (t.exponents[k] != 0) term *= values[k].pow(t.exponents[k]);
    }
    sum += term;
  }
  return sum;
}

std::optional<SparsePoly> SparsePoly::divide_exact(const SparsePoly& divisor) const {
  if (divisor.is_zero()) throw MathError("division by zero");
  if (is_zero()) return SparsePoly();
  if (divisor.is_constant()) return scaled(Rational(1) / divisor.terms_.front().coefficient);
  auto vars = merge_variables(vars_, divisor.vars_);
  SparsePoly a = with_variables(vars);
  SparsePoly b = divisor.with_variables(vars);
  const std::size_t nv = vars.size();
  // Cheap rejection: every variable degree of the divisor must fit.
  for (std::size_t k = 0; k < nv; ++k) {
    std::uint32_t da = 0, db = 0;
    for (const auto& t : a.terms_) da = std::max(da, t.exponents[k]);
    for (const auto& t : b.terms_) db = std::max(db, t.exponents[k]);
    if (db > da) return std::nullopt;
  }
  if (b.terms_.size() > a.terms_.size() && a.terms_.size() == 1) return std::nullopt;

  TermMap rem;
  for (const auto& t : a.terms_) rem.emplace(t.exponents, t.coefficient);
  const Term& lt = b.terms_.front();
  Rational inv_lc = Rational(1) / lt.coefficient;
  std::vector<Term> quotient;
  Exponents qe(nv), scratch(nv);
  while (!rem.empty()) {
    auto first = rem.begin();
    for (std::size_t k = 0; k < nv; ++k) {
      if (first->first[k] < lt.exponents[k]) return std::nullopt;
      qe[k] = first->first[k] - lt.exponents[k];
    }
    Rational qc = first->second * inv_lc;
    rem.erase(first);
    for (std::size_t i = 1; i < b.terms_.size(); ++i) {
      const Term& tb = b.terms_[i];
      for (std::size_t k = 0; k < nv; ++k) scratch[k] = qe[k] + tb.exponents[k];
      Rational delta = qc * tb.coefficient;
      auto it = rem.find(scratch);
      if (it == rem.end()) {
        rem.emplace(scratch, -delta);
      } else {
        it->second -= delta;
        if (it->second.is_zero()) rem.erase(it);
      }
    }
    quotient.push_back({qe, std::move(qc)});
  }
  SparsePoly q;
  q.vars_ = std::move(vars);
  q.terms_ = std::move(quotient);  // produced in descending order
  return q;
}

SparsePoly SparsePoly::monic() const {
  if (terms_.empty()) return *this;
  return scaled(Rational(1) / leading_coefficient());
}

Rational SparsePoly::integer_normalizer() const {
  if (terms_.empty()) return Rational(1);
  mpz_class g = 0, l = 1;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coefficient.raw().get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coefficient.raw().get_den_mpz_t());
  }
  Rational r(l, g);
  return leading_coefficient().sign() < 0 ? -r : r;
}

std::string SparsePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coefficient;
    bool negative = c.sign() < 0;
    Rational mag = c.abs();
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    std::ostringstream mono;
    bool any = false;
    bool first_power = false;
    for (std::size_t k = 0; k < vars_.size(); ++k) {
      if (t.exponents[k] == 0) continue;
      if (any) mono << "*";
      if (!any) first_power = t.exponents[k] > 1;
      mono << vars_[k];
      if (t.exponents[k] > 1) mono << "^" << t.exponents[k];
      any = true;
    }
    if (!any) {
      os << mag.to_string();
    } else if (mag.is_one()) {
      // A leading "-x^2" would read back as (-x)^2 under the expression grammar.
      if (first && negative && first_power) {
        os << "(" << mono.str() << ")";
      } else {
        os << mono.str();
      }
    } else {
      os << mag.to_string() << "*" << mono.str();
    }
    first = false;
  }
  return os.str();
}

bool operator==(const SparsePoly& a, const SparsePoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  if (a.vars_ == b.vars_) {
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].exponents != b.terms_[i].exponents ||
          a.terms_[i].coefficient != b.terms_[i].coefficient) {
        return false;
      }
    }
    return true;
  }
  SparsePoly ta = a.trimmed();
  SparsePoly tb = b.trimmed();
  if (ta.vars_ != tb.vars_) return false;
  return ta == tb;
}

}  // namespace loccalc
