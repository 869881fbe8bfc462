#include "btt/valfield.hpp"

#include <cctype>

#include "btt/errors.hpp"

namespace btt {

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(const RatFunc& f) {
  if (f.is_constant()) {
    rep_ = f.constant_value();
  } else {
    rep_ = f;
  }
}

Scalar Scalar::indeterminate() { return Scalar(RatFunc(Polynomial({Rational(0), Rational(1)}))); }

bool Scalar::is_zero() const {
  return is_rational() ? rational() == 0 : std::get<RatFunc>(rep_).is_zero();
}

RatFunc Scalar::as_ratfunc() const {
  if (is_rational()) return RatFunc(Polynomial(rational()));
  return std::get<RatFunc>(rep_);
}

Scalar Scalar::operator-() const {
  if (is_rational()) return Scalar(Rational(-rational()));
  return Scalar(-std::get<RatFunc>(rep_));
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_rational() && b.is_rational()) return Scalar(Rational(a.rational() + b.rational()));
  return Scalar(a.as_ratfunc() + b.as_ratfunc());
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  if (a.is_rational() && b.is_rational()) return Scalar(Rational(a.rational() - b.rational()));
  return Scalar(a.as_ratfunc() - b.as_ratfunc());
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_rational() && b.is_rational()) return Scalar(Rational(a.rational() * b.rational()));
  return Scalar(a.as_ratfunc() * b.as_ratfunc());
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw Error(Errc::DivisionByZero, "scalar division by zero");
  if (a.is_rational() && b.is_rational()) return Scalar(Rational(a.rational() / b.rational()));
  return Scalar(a.as_ratfunc() / b.as_ratfunc());
}

// ----------------------------------------------------------------- Field

namespace {

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

Integer pow_ui(unsigned long p, unsigned long k) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, k);
  return r;
}

}  // namespace

Field Field::padic(unsigned long p) {
  if (!is_prime(p)) throw Error(Errc::InvalidField, "p-adic backend needs a prime, got " + std::to_string(p));
  return Field(Backend::PAdic, p, "");
}

Field Field::laurent(std::string indeterminate) {
  if (indeterminate.empty()) indeterminate = "t";
  for (char c : indeterminate) {
    if (!std::isalpha(static_cast<unsigned char>(c)))
      throw Error(Errc::InvalidField, "indeterminate must be alphabetic: " + indeterminate);
  }
  return Field(Backend::Laurent, 0, std::move(indeterminate));
}

void Field::check(const Scalar& s) const {
  if (is_padic() && !s.is_rational())
    throw Error(Errc::BackendMismatch, "rational function used in a p-adic field");
}

Val Field::val(const Scalar& s) const {
  check(s);
  if (s.is_zero()) return Val::infinity();
  if (is_padic()) return Val(padic_order(s.rational(), Integer(static_cast<unsigned long>(p_))));
  if (s.is_rational()) return Val(0);
  return Val(s.as_ratfunc().t_order());
}

Scalar Field::uniformizer() const { return uniformizer_pow(1); }

Scalar Field::uniformizer_pow(long k) const {
  auto mag = static_cast<unsigned long>(k < 0 ? -k : k);
  if (is_padic()) {
    Integer pk = pow_ui(p_, mag);
    return k >= 0 ? Scalar(Rational(pk)) : Scalar(Rational(Integer(1), pk));
  }
  Polynomial tk = Polynomial::monomial(Rational(1), mag);
  if (k >= 0) return Scalar(RatFunc(tk));
  return Scalar(RatFunc(Polynomial(Rational(1)), tk));
}

ResidueElement Field::residue(const Scalar& s) const {
  Val v = val(s);
  if (!v.is_infinite() && v.value() < 0)
    throw Error(Errc::NegativeValuation, "residue of an element with valuation " + v.to_string());
  if (is_padic()) {
    ResidueElement out{Rational(0), p_};
    if (!v.is_infinite() && v.value() == 0) {
      Integer p(static_cast<unsigned long>(p_));
      Integer inv;
      const Rational& q = s.rational();
      mpz_invert(inv.get_mpz_t(), q.get_den_mpz_t(), p.get_mpz_t());
      Integer r = q.get_num() * inv;
      mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
      out.value = Rational(r);
    }
    return out;
  }
  ResidueElement out{Rational(0), std::nullopt};
  if (!v.is_infinite() && v.value() == 0) {
    if (s.is_rational()) {
      out.value = s.rational();
    } else {
      RatFunc f = s.as_ratfunc();
      out.value = f.num().coeff(static_cast<std::size_t>(f.num().order_at_zero())) /
                  f.den().coeff(static_cast<std::size_t>(f.den().order_at_zero()));
    }
  }
  return out;
}

Scalar Field::reduce_mod(const Scalar& s, long a) const {
  Val v = val(s);
  if (v.is_infinite() || v.value() >= a) return Scalar(0);
  const long lo = v.value();
  const auto digits = static_cast<unsigned long>(a - lo);
  if (is_padic()) {
    Rational unit = s.rational() / uniformizer_pow(lo).rational();
    Integer mod = pow_ui(p_, digits);
    Integer inv;
    mpz_invert(inv.get_mpz_t(), unit.get_den_mpz_t(), mod.get_mpz_t());
    Integer r = unit.get_num() * inv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
    return Scalar(Rational(r)) * uniformizer_pow(lo);
  }
  RatFunc f = s.as_ratfunc();
  Polynomial num = f.num().shifted(-f.num().order_at_zero());
  Polynomial den = f.den().shifted(-f.den().order_at_zero());
  // Power series num/den truncated after `digits` terms.
  std::vector<Rational> series(digits, Rational(0));
  const Rational d0_inv = 1 / den.coeff(0);
  for (std::size_t k = 0; k < digits; ++k) {
    Rational acc = num.coeff(k);
    for (std::size_t j = 1; j <= k; ++j) acc -= den.coeff(j) * series[k - j];
    series[k] = acc * d0_inv;
  }
  return Scalar(RatFunc(Polynomial(std::move(series)))) * uniformizer_pow(lo);
}

std::size_t Field::residue_size() const {
  if (!is_padic())
    throw Error(Errc::UnsupportedEnumeration, "residue field of the Laurent backend is infinite");
  return p_;
}

std::string Field::format(const Scalar& s) const {
  check(s);
  if (s.is_rational()) return to_string(s.rational());
  return s.as_ratfunc().to_string(var_);
}

// Recursive-descent parser for scalar expressions: integers, the
// indeterminate, + - * / ^ and parentheses. Juxtaposition multiplies.
namespace {

class ExprParser {
 public:
  ExprParser(const Field& field, std::string_view text) : field_(field), text_(text) {}

  Scalar run() {
    Scalar s = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return s;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::Parse, why + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool starts_atom() {
    char c = peek();
    return c == '(' || std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c));
  }

  Scalar expr() {
    Scalar acc = term();
    for (char c = peek(); c == '+' || c == '-'; c = peek()) {
      ++pos_;
      Scalar rhs = term();
      acc = c == '+' ? acc + rhs : acc - rhs;
    }
    return acc;
  }

  Scalar term() {
    Scalar acc = unary();
    for (;;) {
      char c = peek();
      if (c == '*' || c == '/') {
        ++pos_;
        Scalar rhs = unary();
        acc = c == '*' ? acc * rhs : acc / rhs;
      } else if (starts_atom()) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  Scalar unary() {
    char c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  Scalar power() {
    Scalar base = atom();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    bool neg = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      neg = text_[pos_] == '-';
      ++pos_;
    }
    Integer e = digits();
    if (e > 4096) fail("exponent too large");
    Scalar r(1);
    for (long i = 0; i < e.get_si(); ++i) r = r * base;
    return neg ? Scalar(1) / r : r;
  }

  Integer digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return Integer(std::string(text_.substr(start, pos_ - start)), 10);
  }

  Scalar atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Scalar s = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return s;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Scalar(digits());
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      if (field_.is_padic() || name != field_.indeterminate()) {
        pos_ = start;
        fail("unknown symbol '" + std::string(name) + "'");
      }
      return Scalar::indeterminate();
    }
    fail("unexpected character");
  }

  const Field& field_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar Field::parse(std::string_view text) const { return ExprParser(*this, text).run(); }

}  // namespace btt
