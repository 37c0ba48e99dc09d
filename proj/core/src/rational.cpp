#include "schottky/rational.hpp"

#include "schottky/errors.hpp"

#include <cctype>
#include <functional>
#include <ostream>

namespace schottky {

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) i = 1;
  if (i == text.size()) throw InputError("malformed rational: '" + std::string(whole) + "'");
  for (std::size_t k = i; k < text.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(text[k]))) {
      throw InputError("malformed rational: '" + std::string(whole) + "'");
    }
  }
  std::string digits(text);
  if (digits[0] == '+') digits.erase(0, 1);
  return BigInt(digits, 10);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw InputError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const std::string_view t = trim(text);
  const auto slash = t.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(t, text));
  const BigInt num = parse_integer(trim(t.substr(0, slash)), text);
  const BigInt den = parse_integer(trim(t.substr(slash + 1)), text);
  return Rational(num, den);
}

Rational Rational::inverse() const {
  if (is_zero()) throw InputError("inverse of zero");
  Rational r;
  r.q_ = 1 / q_;
  return r;
}

Rational Rational::abs() const {
  Rational r;
  r.q_ = ::abs(q_);
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw InputError("division by zero");
  q_ /= o.q_;
  return *this;
}

std::string Rational::to_string() const {
  if (is_integer()) return num().get_str();
  return num().get_str() + "/" + den().get_str();
}

std::size_t Rational::hash() const {
  // Combine the low limbs of numerator and denominator; collisions only cost a compare.
  const std::size_t h1 = mpz_get_ui(num().get_mpz_t()) ^ (static_cast<std::size_t>(sgn(num())) << 61);
  const std::size_t h2 = mpz_get_ui(den().get_mpz_t());
  return h1 * 0x9E3779B97F4A7C15ULL ^ (h2 + 0x632BE59BD9B4E019ULL + (h1 << 6) + (h1 >> 2));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational power_of(std::uint32_t p, long e) {
  BigInt pe;
  mpz_ui_pow_ui(pe.get_mpz_t(), p, static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0) return Rational(pe);
  return Rational(BigInt(1), pe);
}

}  // namespace schottky
