#include "loccalc/expr.hpp"

#include <cctype>
#include <sstream>

#include "loccalc/error.hpp"

namespace loccalc {

Expr Expr::make_number(Rational value) {
  Expr e;
  e.kind = Kind::Number;
  e.number = std::move(value);
  return e;
}

Expr Expr::make_symbol(std::string name) {
  Expr e;
  e.kind = Kind::Symbol;
  e.name = std::move(name);
  return e;
}

Expr Expr::make_imaginary() {
  Expr e;
  e.kind = Kind::Imaginary;
  return e;
}

Expr Expr::make_unary(Kind kind, Expr operand) {
  Expr e;
  e.kind = kind;
  e.children.push_back(std::move(operand));
  return e;
}

Expr Expr::make_binary(Kind kind, Expr lhs, Expr rhs) {
  Expr e;
  e.kind = kind;
  e.children.push_back(std::move(lhs));
  e.children.push_back(std::move(rhs));
  return e;
}

Expr Expr::make_pow(Expr base, std::uint32_t exponent) {
  Expr e;
  e.kind = Kind::Pow;
  e.exponent = exponent;
  e.children.push_back(std::move(base));
  return e;
}

namespace {

bool indexed_name(const std::string& name, const std::string& prefix, std::size_t* index) {
  if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return false;
  std::size_t value = 0;
  for (std::size_t k = prefix.size(); k < name.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(name[k]))) return false;
    value = value * 10 + static_cast<std::size_t>(name[k] - '0');
    if (value > 100000) return false;
  }
  if (name.size() > prefix.size() + 1 && name[prefix.size()] == '0') return false;
  if (index != nullptr) *index = value;
  return true;
}

}  // namespace

ExprContext ExprContext::symbols(std::set<std::string> names) {
  std::string desc = "{";
  for (const auto& n : names) desc += (desc.size() > 1 ? ", " : "") + n;
  desc += "}";
  return ExprContext([names = std::move(names)](const std::string& s) { return names.count(s) > 0; }, false,
                     desc);
}

ExprContext ExprContext::weights() {
  return ExprContext(
      [](const std::string& s) { return s == "t" || s == "s" || indexed_name(s, "l", nullptr); }, false,
      "t, s, l0, l1, ...");
}

ExprContext ExprContext::chern(std::size_t n, const std::string& prefix) {
  return ExprContext(
      [n, prefix](const std::string& s) {
        std::size_t k = 0;
        return indexed_name(s, prefix, &k) && k >= 1 && k <= n;
      },
      false, prefix + "1 .. " + prefix + std::to_string(n));
}

ExprContext ExprContext::residue(std::size_t n) {
  return ExprContext(
      [n](const std::string& s) {
        std::size_t k = 0;
        return indexed_name(s, "z", &k) && k >= 1 && k <= n;
      },
      true, "z1 .. z" + std::to_string(n) + ", i");
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const ExprContext& context) : text_(text), context_(context) {}

  Expr parse() {
    Expr e = expr();
    skip_space();
    if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_ + 1); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Expr expr() {
    Expr lhs = term();
    for (char c = peek(); c == '+' || c == '-'; c = peek()) {
      ++pos_;
      Expr rhs = term();
      lhs = Expr::make_binary(c == '+' ? Expr::Kind::Add : Expr::Kind::Sub, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = factor();
    for (char c = peek(); c == '*' || c == '/'; c = peek()) {
      ++pos_;
      Expr rhs = factor();
      lhs = Expr::make_binary(c == '*' ? Expr::Kind::Mul : Expr::Kind::Div, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr factor() {
    Expr base = atom();
    if (peek() == '^') {
      ++pos_;
      skip_space();
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        fail("expected a nonnegative integer exponent");
      }
      std::size_t start = pos_;
      mpz_class value{std::string(unsigned_digits())};
      if (value > 1000000) {
        pos_ = start;
        fail("exponent too large");
      }
      return Expr::make_pow(std::move(base), static_cast<std::uint32_t>(value.get_ui()));
    }
    return base;
  }

  std::string_view unsigned_digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  bool ident_char(char c, bool first) const {
    auto u = static_cast<unsigned char>(c);
    if (u >= 0x80) return true;  // UTF-8 continuation of names such as λ0
    return std::isalpha(u) || c == '_' || (!first && std::isdigit(u));
  }

  Expr atom() {
    char c = peek();
    if (c == '\0') fail("unexpected end of expression");
    if (c == '-') {
      ++pos_;
      return Expr::make_unary(Expr::Kind::Negate, atom());
    }
    if (c == '(') {
      ++pos_;
      Expr inner = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num{std::string(unsigned_digits())};
      std::size_t save = pos_;
      if (peek() == '/') {
        ++pos_;
        skip_space();
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          std::size_t den_start = pos_;
          mpz_class den{std::string(unsigned_digits())};
          if (den == 0) {
            pos_ = den_start;
            throw MathError("division by zero in rational literal at column " + std::to_string(den_start + 1));
          }
          return Expr::make_number(Rational(num, den));
        }
      }
      pos_ = save;
      return Expr::make_number(Rational(num, mpz_class(1)));
    }
    if (ident_char(c, true)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && ident_char(text_[pos_], pos_ == start)) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (name.rfind("\xCE\xBB", 0) == 0) name = "l" + name.substr(2);
      if (name == "i") {
        if (!context_.allows_imaginary()) {
          throw InputError("imaginary literal 'i' is not allowed here (column " + std::to_string(start + 1) + ")");
        }
        return Expr::make_imaginary();
      }
      if (!context_.allows(name)) {
        throw InputError("unknown symbol '" + name + "' at column " + std::to_string(start + 1) +
                         " (allowed: " + context_.description() + ")");
      }
      return Expr::make_symbol(std::move(name));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  const ExprContext& context_;
  std::size_t pos_ = 0;
};

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
      return 2;
    case Expr::Kind::Pow:
      return 3;
    default:
      return 4;
  }
}

// True when the printed form ends in a bare integer literal, so that a following
// "/<uint>" would be re-read as part of a rational literal.
bool ends_with_integer(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return e.number.is_integer();
    case Expr::Kind::Negate:
      return ends_with_integer(e.children[0]);
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
      return precedence(e.children[1]) > 2 && ends_with_integer(e.children[1]);
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return precedence(e.children[1]) > 1 && ends_with_integer(e.children[1]);
    default:
      return false;
  }
}

void print(const Expr& e, std::ostringstream& os);

void print_at(const Expr& e, int min_precedence, std::ostringstream& os) {
  if (precedence(e) < min_precedence) {
    os << "(";
    print(e, os);
    os << ")";
  } else {
    print(e, os);
  }
}

void print(const Expr& e, std::ostringstream& os) {
  switch (e.kind) {
    case Expr::Kind::Number:
      if (e.number.sign() < 0) {
        os << "(-" << e.number.abs().to_string() << ")";
      } else {
        os << e.number.to_string();
      }
      return;
    case Expr::Kind::Imaginary:
      os << "i";
      return;
    case Expr::Kind::Symbol:
      os << e.name;
      return;
    case Expr::Kind::Negate:
      os << "-";
      print_at(e.children[0], 4, os);
      return;
    case Expr::Kind::Pow:
      print_at(e.children[0], 4, os);
      os << "^" << e.exponent;
      return;
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      print_at(e.children[0], 1, os);
      os << (e.kind == Expr::Kind::Add ? " + " : " - ");
      print_at(e.children[1], 2, os);
      return;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: {
      print_at(e.children[0], 2, os);
      os << (e.kind == Expr::Kind::Mul ? "*" : "/");
      const Expr& rhs = e.children[1];
      bool merge_risk = rhs.kind == Expr::Kind::Number && ends_with_integer(e.children[0]) &&
                        e.kind == Expr::Kind::Div;
      if (merge_risk) {
        os << "(";
        print(rhs, os);
        os << ")";
      } else {
        print_at(rhs, 3, os);
      }
      return;
    }
  }
}

ComplexPoly multiply(const ComplexPoly& a, const ComplexPoly& b) {
  return {a.real * b.real - a.imag * b.imag, a.real * b.imag + a.imag * b.real};
}

}  // namespace

Expr parse_expr(std::string_view text, const ExprContext& context) { return Parser(text, context).parse(); }

std::string pretty_print(const Expr& e) {
  std::ostringstream os;
  print(e, os);
  return os.str();
}

RatFn to_ratfn(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return RatFn(e.number);
    case Expr::Kind::Imaginary:
      throw InputError("imaginary literal is not allowed in an exact weight expression");
    case Expr::Kind::Symbol:
      return RatFn::variable(e.name);
    case Expr::Kind::Negate:
      return -to_ratfn(e.children[0]);
    case Expr::Kind::Pow:
      return to_ratfn(e.children[0]).pow(e.exponent);
    case Expr::Kind::Add:
      return to_ratfn(e.children[0]) + to_ratfn(e.children[1]);
    case Expr::Kind::Sub:
      return to_ratfn(e.children[0]) - to_ratfn(e.children[1]);
    case Expr::Kind::Mul:
      return to_ratfn(e.children[0]) * to_ratfn(e.children[1]);
    case Expr::Kind::Div:
      return to_ratfn(e.children[0]) / to_ratfn(e.children[1]);
  }
  return RatFn();
}

ComplexPoly to_complex_poly(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return {SparsePoly(e.number), SparsePoly()};
    case Expr::Kind::Imaginary:
      return {SparsePoly(), SparsePoly(1)};
    case Expr::Kind::Symbol:
      return {SparsePoly::variable(e.name), SparsePoly()};
    case Expr::Kind::Negate: {
      ComplexPoly p = to_complex_poly(e.children[0]);
      return {-p.real, -p.imag};
    }
    case Expr::Kind::Pow: {
      ComplexPoly base = to_complex_poly(e.children[0]);
      ComplexPoly result{SparsePoly(1), SparsePoly()};
      for (std::uint32_t k = 0; k < e.exponent; ++k) result = multiply(result, base);
      return result;
    }
    case Expr::Kind::Add:
    case Expr::Kind::Sub: {
      ComplexPoly a = to_complex_poly(e.children[0]);
      ComplexPoly b = to_complex_poly(e.children[1]);
      if (e.kind == Expr::Kind::Add) return {a.real + b.real, a.imag + b.imag};
      return {a.real - b.real, a.imag - b.imag};
    }
    case Expr::Kind::Mul:
      return multiply(to_complex_poly(e.children[0]), to_complex_poly(e.children[1]));
    case Expr::Kind::Div: {
      ComplexPoly a = to_complex_poly(e.children[0]);
      ComplexPoly b = to_complex_poly(e.children[1]);
      if (!b.real.is_constant() || !b.imag.is_constant()) {
        throw InputError("polynomial expressions may only divide by constants");
      }
      Rational c = b.real.constant_value(), d = b.imag.constant_value();
      Rational norm = c * c + d * d;
      if (norm.is_zero()) throw MathError("division by zero");
      ComplexPoly conj{SparsePoly(c / norm), SparsePoly(-d / norm)};
      return multiply(a, conj);
    }
  }
  return {};
}

RatFn parse_ratfn(std::string_view text, const ExprContext& context) { return to_ratfn(parse_expr(text, context)); }

}  // namespace loccalc
