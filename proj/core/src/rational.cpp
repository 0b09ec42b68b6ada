#include "frontier/rational.hpp"

#include <cctype>
#include <ostream>

#include "frontier/errors.hpp"

namespace frontier {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (!all_digits(digits)) {
    throw InputError("not a rational number: \"" + std::string(whole) + "\"");
  }
  std::string buf(s.front() == '+' ? s.substr(1) : s);
  return mpz_class(buf, 10);
}

Rational parse_decimal(std::string_view text) {
  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    const mpz_class exp = parse_integer(text.substr(e + 1), text);
    if (!exp.fits_slong_p() || abs(exp) > 10000) {
      throw InputError("decimal exponent out of range: \"" + std::string(text) + "\"");
    }
    exponent = exp.get_si();
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string_view int_part = mantissa;
  std::string_view frac_part;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    int_part = mantissa.substr(0, dot);
    frac_part = mantissa.substr(dot + 1);
  }
  if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
      (!frac_part.empty() && !all_digits(frac_part))) {
    throw InputError("not a rational number: \"" + std::string(text) + "\"");
  }
  std::string digits = std::string(int_part) + std::string(frac_part);
  mpz_class num(digits, 10);
  mpz_class den = 1;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_part.size());
  mpz_class scale = 1;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent >= 0) {
    num *= scale;
  } else {
    den *= scale;
  }
  if (negative) num = -num;
  return Rational(mpq_class(num, den));
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw InputError("zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw InputError("division by zero");
  value_ /= o.value_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw InputError("empty rational literal");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const mpz_class num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (den_text.empty() || !all_digits(den_text)) {
      throw InputError("not a rational number: \"" + std::string(text) + "\"");
    }
    const mpz_class den(std::string(den_text), 10);
    if (den == 0) throw InputError("zero denominator in \"" + std::string(text) + "\"");
    return Rational(mpq_class(num, den));
  }
  if (text.find_first_of(".eE") != std::string_view::npos) return parse_decimal(text);
  return Rational(mpq_class(parse_integer(text, text)));
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

}  // namespace frontier
