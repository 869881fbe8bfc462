#pragma once

#include <string>
#include <vector>

#include "btt/rational.hpp"

namespace btt {

/// Dense univariate polynomial over Q, coefficients stored low degree first
/// with no trailing zeros (the zero polynomial has no coefficients).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  explicit Polynomial(const Rational& c);

  static Polynomial monomial(const Rational& c, std::size_t degree);

  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  /// Largest k with t^k dividing the polynomial; requires nonzero.
  long order_at_zero() const;
  const Rational& coeff(std::size_t i) const;
  const Rational& leading() const { return coeffs_.back(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const Rational& c) const;
  /// Multiply by t^k (k >= 0) or divide by t^{-k} when exact.
  Polynomial shifted(long k) const;

  /// Euclidean division; b nonzero.
  static void divmod(const Polynomial& a, const Polynomial& b, Polynomial& q, Polynomial& r);
  /// Monic gcd (zero if both are zero).
  static Polynomial gcd(Polynomial a, Polynomial b);

  Polynomial monic() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Ascending-degree text such as "3-2*t+t^2"; coefficients may be fractions.
  std::string to_string(const std::string& var) const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Element of Q(t) held as num/den with gcd(num, den) = 1 and den monic.
class RatFunc {
 public:
  RatFunc() : num_(), den_(Rational(1)) {}
  explicit RatFunc(Polynomial num) : num_(std::move(num)), den_(Rational(1)) {}
  RatFunc(Polynomial num, Polynomial den);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  /// Only meaningful when is_constant().
  Rational constant_value() const;

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// t-adic order: order of num minus order of den; requires nonzero.
  long t_order() const;

  /// "(p)/(q)" with integer coefficients, or "(p)" when the denominator is 1.
  std::string to_string(const std::string& var) const;

 private:
  struct Coprime {};
  // Caller guarantees gcd(num, den) = 1; only the leading coefficient is fixed.
  RatFunc(Polynomial num, Polynomial den, Coprime);
  void normalize();
  void make_monic();
  Polynomial num_;
  Polynomial den_;
};

}  // namespace btt
