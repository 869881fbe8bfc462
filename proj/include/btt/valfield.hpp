#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "btt/poly.hpp"
#include "btt/rational.hpp"

namespace btt {

/// An element of K. Constants are always stored as a Rational, so a
/// rational function that reduces to a constant compares equal to it.
class Scalar {
 public:
  Scalar() : rep_(Rational(0)) {}
  Scalar(int v) : rep_(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(long v) : rep_(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(const Integer& v) : rep_(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(const Rational& v) : rep_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Scalar(const RatFunc& f);

  /// The indeterminate t of the Laurent backend.
  static Scalar indeterminate();

  bool is_zero() const;
  bool is_rational() const { return std::holds_alternative<Rational>(rep_); }
  const Rational& rational() const { return std::get<Rational>(rep_); }
  RatFunc as_ratfunc() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.rep_ == b.rep_; }

 private:
  std::variant<Rational, RatFunc> rep_;
};

/// Value in Z ∪ {∞}.
class Val {
 public:
  Val() = default;  // ∞
  explicit Val(long v) : v_(v) {}
  static Val infinity() { return {}; }

  bool is_infinite() const { return !v_.has_value(); }
  long value() const { return *v_; }

  friend Val operator+(Val a, Val b) {
    if (a.is_infinite() || b.is_infinite()) return {};
    return Val(*a.v_ + *b.v_);
  }
  friend bool operator==(Val a, Val b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(Val a, Val b) {
    if (a.is_infinite() || b.is_infinite()) {
      return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
    }
    return *a.v_ <=> *b.v_;
  }
  friend Val min(Val a, Val b) { return a < b ? a : b; }

  std::string to_string() const { return v_ ? std::to_string(*v_) : "inf"; }

 private:
  std::optional<long> v_;
};

/// Image in the residue field: an integer mod p (modulus set) or a rational.
struct ResidueElement {
  Rational value;
  std::optional<unsigned long> modulus;

  friend bool operator==(const ResidueElement&, const ResidueElement&) = default;
};

/// A discretely valued field: Q with the p-adic valuation, or Q(t) with the
/// t-adic valuation. Cheap to copy.
class Field {
 public:
  enum class Backend { PAdic, Laurent };

  /// Throws InvalidField unless p is prime.
  static Field padic(unsigned long p);
  static Field laurent(std::string indeterminate = "t");

  Backend backend() const { return backend_; }
  bool is_padic() const { return backend_ == Backend::PAdic; }
  unsigned long prime() const { return p_; }
  const std::string& indeterminate() const { return var_; }

  Val val(const Scalar& s) const;
  Scalar uniformizer() const;
  Scalar uniformizer_pow(long k) const;
  ResidueElement residue(const Scalar& s) const;

  /// Canonical representative of the coset s + ϖ^a O: zero when val(s) >= a,
  /// otherwise the expansion of s truncated below ϖ^a (p-adic digits in
  /// [0, p) or Laurent coefficients).
  Scalar reduce_mod(const Scalar& s, long a) const;

  /// Residue-field lifts used for enumerating P^1(k); PAdic only.
  std::size_t residue_size() const;

  std::string format(const Scalar& s) const;
  Scalar parse(std::string_view text) const;

  /// Rejects scalars that do not belong to this field.
  void check(const Scalar& s) const;

  friend bool operator==(const Field& a, const Field& b) {
    return a.backend_ == b.backend_ && a.p_ == b.p_ && a.var_ == b.var_;
  }

 private:
  Field(Backend b, unsigned long p, std::string var) : backend_(b), p_(p), var_(std::move(var)) {}
  Backend backend_;
  unsigned long p_ = 0;
  std::string var_;
};

}  // namespace btt
