#include "fpi/rational.hpp"

#include <cctype>
#include <functional>
#include <stdexcept>
#include <string>

namespace fpi {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

Rational parse_decimal(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string exp_text(s.substr(e + 1));
    std::size_t used = 0;
    try {
      exponent = std::stol(exp_text, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed rational exponent: " + exp_text);
    }
    if (used != exp_text.size()) throw std::invalid_argument("malformed rational exponent: " + exp_text);
    s = s.substr(0, e);
  }
  std::string digits;
  auto dot = s.find('.');
  std::string_view int_part = s.substr(0, dot);
  std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if (int_part.empty() && frac_part.empty()) throw std::invalid_argument("empty rational");
  if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
    throw std::invalid_argument("malformed rational: " + std::string(s));
  digits.append(int_part);
  digits.append(frac_part);
  exponent -= static_cast<long>(frac_part.size());
  mpz_class num(digits.empty() ? "0" : digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational q = exponent < 0 ? Rational(num, scale) : Rational(num * scale);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s = strip(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto slash = s.find('/');
  if (slash == std::string::npos) return parse_decimal(s);

  std::string num = strip(std::string_view(s).substr(0, slash));
  std::string den = strip(std::string_view(s).substr(slash + 1));
  std::string_view num_digits = num;
  if (!num_digits.empty() && (num_digits.front() == '-' || num_digits.front() == '+'))
    num_digits.remove_prefix(1);
  if (!all_digits(num_digits) || !all_digits(den))
    throw std::invalid_argument("malformed rational: " + s);
  mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator: " + s);
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  return c.get_str();
}

std::size_t hash_value(const Rational& q) noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  auto absorb = [&mix](mpz_srcptr z) {
    mix(static_cast<std::size_t>(mpz_sgn(z) + 1));
    const std::size_t limbs = mpz_size(z);
    for (std::size_t i = 0; i < limbs; ++i) mix(static_cast<std::size_t>(mpz_getlimbn(z, static_cast<mp_size_t>(i))));
  };
  absorb(q.get_num_mpz_t());
  absorb(q.get_den_mpz_t());
  return h;
}

bool as_integer(const Rational& q, long* out) {
  if (q.get_den() != 1) return false;
  if (out != nullptr) {
    if (!q.get_num().fits_slong_p()) return false;
    *out = q.get_num().get_si();
  }
  return true;
}

}  // namespace fpi
