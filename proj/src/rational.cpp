#include "randfair/rational.hpp"

#include <cctype>

#include "randfair/error.hpp"

namespace randfair {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad(std::string_view text) {
  throw Error(ErrorKind::ParseError, "not a rational number: '" + std::string(text) + "'");
}

Integer parse_signed_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) bad(whole);
  Integer value(std::string(s), 10);
  return negative ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) bad(text);

  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const Integer num = parse_signed_integer(trim(s.substr(0, slash)), text);
    const std::string_view den_text = trim(s.substr(slash + 1));
    if (!all_digits(den_text)) bad(text);
    const Integer den(std::string(den_text), 10);
    if (den == 0) bad(text);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  std::string_view body = s;
  bool negative = false;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto dot = body.find('.');
  std::string_view int_part = body.substr(0, dot);
  std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
  if (int_part.empty() && frac_part.empty()) bad(text);
  if (!int_part.empty() && !all_digits(int_part)) bad(text);
  if (dot != std::string_view::npos && !frac_part.empty() && !all_digits(frac_part)) bad(text);
  if (dot != std::string_view::npos && int_part.empty() && frac_part.empty()) bad(text);

  std::string digits(int_part);
  digits += frac_part;
  if (digits.empty()) bad(text);
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_part.size());
  Rational q(Integer(digits, 10), den);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string format_rational(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

ScaledIntegers scale_to_integers(std::span<const Rational> values) {
  Integer scale = 1;
  for (const auto& v : values) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), v.get_den_mpz_t());
  ScaledIntegers out;
  out.values.reserve(values.size());
  for (const auto& v : values) out.values.push_back(Integer(v.get_num() * (scale / v.get_den())));
  out.scale = scale;
  return out;
}

}  // namespace randfair
