#include "btt/rational.hpp"

#include <cctype>

#include "btt/errors.hpp"

namespace btt {

Integer floor_q(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_q(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational frac_q(const Rational& q) { return q - Rational(floor_q(q)); }

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Integer parse_integer(std::string_view s) {
  s = trim(s);
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty()) throw Error(Errc::Parse, "empty integer in '" + std::string(s) + "'");
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw Error(Errc::Parse, "bad integer '" + std::string(s) + "'");
  }
  std::string buf(s);
  if (buf.front() == '+') buf.erase(0, 1);
  return Integer(buf, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s));
  Integer num = parse_integer(s.substr(0, slash));
  Integer den = parse_integer(s.substr(slash + 1));
  if (den == 0) throw Error(Errc::DivisionByZero, "zero denominator in '" + std::string(s) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

long padic_order(const Rational& q, const Integer& p) {
  Integer num = q.get_num();
  Integer den = q.get_den();
  Integer tmp;
  long up = static_cast<long>(mpz_remove(tmp.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t()));
  long down = static_cast<long>(mpz_remove(tmp.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()));
  return up - down;
}

long to_long(const Integer& z) {
  if (!z.fits_slong_p()) throw Error(Errc::InvalidScalar, "integer out of range: " + z.get_str());
  return z.get_si();
}

Integer lcm_of_denominators(const std::vector<Rational>& xs) {
  Integer l = 1;
  for (const auto& x : xs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::NegativeValuation: return "NegativeValuation";
    case Errc::InvalidField: return "InvalidField";
    case Errc::InvalidScalar: return "InvalidScalar";
    case Errc::BackendMismatch: return "BackendMismatch";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::Singular: return "Singular";
    case Errc::NonIntegralNorm: return "NonIntegralNorm";
    case Errc::UnsupportedEnumeration: return "UnsupportedEnumeration";
    case Errc::RadiusTooLarge: return "RadiusTooLarge";
    case Errc::PointOutsideCell: return "PointOutsideCell";
    case Errc::VertexNotFound: return "VertexNotFound";
    case Errc::CellNotFound: return "CellNotFound";
    case Errc::CellMismatch: return "CellMismatch";
    case Errc::GluingViolation: return "GluingViolation";
    case Errc::Parse: return "ParseError";
    case Errc::Schema: return "SchemaError";
  }
  return "Error";
}

}  // namespace btt
