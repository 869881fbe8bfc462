#include "btt/poly.hpp"

#include <algorithm>

#include "btt/errors.hpp"

namespace btt {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) coeffs_.push_back(c);
}

Polynomial Polynomial::monomial(const Rational& c, std::size_t degree) {
  if (c == 0) return {};
  std::vector<Rational> v(degree + 1, Rational(0));
  v[degree] = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

long Polynomial::order_at_zero() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) return static_cast<long>(i);
  }
  throw Error(Errc::InvalidScalar, "order of the zero polynomial");
}

const Rational& Polynomial::coeff(std::size_t i) const {
  static const Rational zero(0);
  return i < coeffs_.size() ? coeffs_[i] : zero;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
  return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(v));
}

Polynomial Polynomial::scaled(const Rational& c) const {
  if (c == 0) return {};
  Polynomial r = *this;
  for (auto& x : r.coeffs_) x *= c;
  return r;
}

Polynomial Polynomial::shifted(long k) const {
  if (is_zero() || k == 0) return *this;
  if (k > 0) {
    std::vector<Rational> v(static_cast<std::size_t>(k), Rational(0));
    v.insert(v.end(), coeffs_.begin(), coeffs_.end());
    return Polynomial(std::move(v));
  }
  auto drop = static_cast<std::size_t>(-k);
  if (order_at_zero() < -k) throw Error(Errc::InvalidScalar, "inexact shift of polynomial");
  return Polynomial(std::vector<Rational>(coeffs_.begin() + static_cast<long>(drop), coeffs_.end()));
}

void Polynomial::divmod(const Polynomial& a, const Polynomial& b, Polynomial& q, Polynomial& r) {
  if (b.is_zero()) throw Error(Errc::DivisionByZero, "polynomial division by zero");
  r = a;
  if (a.degree() < b.degree()) {
    q = Polynomial();
    return;
  }
  std::vector<Rational> qc(static_cast<std::size_t>(a.degree() - b.degree() + 1), Rational(0));
  const Rational lead_inv = 1 / b.leading();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    auto shift = static_cast<std::size_t>(r.degree() - b.degree());
    Rational c = r.leading() * lead_inv;
    qc[shift] = c;
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r.coeffs_[i + shift] -= c * b.coeffs_[i];
    r.trim();
  }
  q = Polynomial(std::move(qc));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  return scaled(1 / leading());
}

namespace {

using IntPoly = std::vector<Integer>;  // low degree first, no trailing zeros

void make_primitive(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  if (p.empty()) return;
  Integer g = 0;
  for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (p.back() < 0) g = -g;
  for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

IntPoly to_int_poly(const Polynomial& p) {
  Integer l = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  IntPoly out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.push_back(c.get_num() * (l / c.get_den()));
  make_primitive(out);
  return out;
}

// Primitive pseudo-remainder of a by b (both primitive, deg a >= deg b).
IntPoly prem(IntPoly a, const IntPoly& b) {
  const Integer& lb = b.back();
  while (a.size() >= b.size()) {
    Integer c = a.back();
    std::size_t shift = a.size() - b.size();
    for (auto& x : a) x *= lb;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
    a.pop_back();
    make_primitive(a);
  }
  return a;
}

}  // namespace

// Primitive polynomial remainder sequence over Z; avoids the coefficient
// swell of Euclid over Q.
Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(Rational(1));
  IntPoly x = to_int_poly(a), y = to_int_poly(b);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    if (y.size() == 1) return Polynomial(Rational(1));
    IntPoly r = prem(std::move(x), y);
    x = std::move(y);
    y = std::move(r);
  }
  std::vector<Rational> c;
  c.reserve(x.size());
  for (const auto& v : x) c.emplace_back(v);
  return Polynomial(std::move(c)).monic();
}

std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    bool neg = c < 0;
    Rational mag = neg ? Rational(-c) : c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? "-" : "+";
    }
    if (i == 0) {
      out += btt::to_string(mag);
      continue;
    }
    if (mag != 1) out += btt::to_string(mag) + "*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

namespace {

Polynomial exact_quotient(const Polynomial& x, const Polynomial& g) {
  if (g.is_constant()) return x.scaled(1 / g.leading());
  Polynomial q, r;
  Polynomial::divmod(x, g, q, r);
  return q;
}

}  // namespace

RatFunc::RatFunc(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(Errc::DivisionByZero, "rational function with zero denominator");
  normalize();
}

RatFunc::RatFunc(Polynomial num, Polynomial den, Coprime) : num_(std::move(num)), den_(std::move(den)) {
  if (num_.is_zero()) den_ = Polynomial(Rational(1));
  make_monic();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial(Rational(1));
    return;
  }
  // Constant denominators (the common case: polynomials) need no gcd.
  Polynomial g = den_.is_constant() ? Polynomial(Rational(1)) : Polynomial::gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = exact_quotient(num_, g);
    den_ = exact_quotient(den_, g);
  }
  make_monic();
}

void RatFunc::make_monic() {
  Rational lead = den_.leading();
  if (lead != 1) {
    num_ = num_.scaled(1 / lead);
    den_ = den_.scaled(1 / lead);
  }
}

Rational RatFunc::constant_value() const { return num_.coeff(0) / den_.coeff(0); }

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

// Henrici: with g = gcd(b, d), a/b + c/d = (a d' + c b') / (b d') and only
// gcd(numerator, g) can remain.
RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_.is_constant() && b.den_.is_constant())
    return RatFunc(a.num_ * b.den_.scaled(1 / a.den_.leading()) + b.num_, b.den_, RatFunc::Coprime{});
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  Polynomial g = Polynomial::gcd(a.den_, b.den_);
  Polynomial ad = exact_quotient(a.den_, g), bd = exact_quotient(b.den_, g);
  Polynomial n = a.num_ * bd + b.num_ * ad;
  if (n.is_zero()) return RatFunc();
  Polynomial h = g.is_constant() ? g : Polynomial::gcd(n, g);
  if (h.is_constant()) return RatFunc(std::move(n), a.den_ * bd, RatFunc::Coprime{});
  return RatFunc(exact_quotient(n, h), exact_quotient(a.den_, h) * bd, RatFunc::Coprime{});
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

// Cross-cancel first; the gcds are of smaller degree than the full product's.
RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc();
  Polynomial g1 = b.den_.is_constant() ? Polynomial(Rational(1)) : Polynomial::gcd(a.num_, b.den_);
  Polynomial g2 = a.den_.is_constant() ? Polynomial(Rational(1)) : Polynomial::gcd(b.num_, a.den_);
  return RatFunc(exact_quotient(a.num_, g1) * exact_quotient(b.num_, g2),
                 exact_quotient(a.den_, g2) * exact_quotient(b.den_, g1), RatFunc::Coprime{});
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw Error(Errc::DivisionByZero, "division by zero rational function");
  return a * RatFunc(b.den_, b.num_, RatFunc::Coprime{});
}

long RatFunc::t_order() const { return num_.order_at_zero() - den_.order_at_zero(); }

std::string RatFunc::to_string(const std::string& var) const {
  std::vector<Rational> all = num_.coeffs();
  all.insert(all.end(), den_.coeffs().begin(), den_.coeffs().end());
  Rational scale(lcm_of_denominators(all));
  Polynomial n = num_.scaled(scale);
  Polynomial d = den_.scaled(scale);
  // Integer coefficients now; strip the common integer content.
  Integer content = 0;
  for (const auto& c : n.coeffs()) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_num_mpz_t());
  for (const auto& c : d.coeffs()) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_num_mpz_t());
  if (content > 1) {
    n = n.scaled(Rational(1, content));
    d = d.scaled(Rational(1, content));
  }
  if (d == Polynomial(Rational(1))) return "(" + n.to_string(var) + ")";
  return "(" + n.to_string(var) + ")/(" + d.to_string(var) + ")";
}

}  // namespace btt
