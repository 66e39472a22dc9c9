#include "tms/rational.hpp"

#include <cctype>
#include <string>

#include "tms/error.hpp"

namespace tms {

namespace {

using boost::multiprecision::cpp_int;

cpp_int parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw PreconditionError("malformed rational '" + std::string(whole) + "'");
  cpp_int v = 0;
  for (const char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw PreconditionError("malformed rational '" + std::string(whole) + "'");
    v = v * 10 + (c - '0');
  }
  return v;
}

cpp_int pow10(long e) {
  cpp_int r = 1;
  for (long k = 0; k < e; ++k) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  Rational value;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const cpp_int num = parse_integer(text.substr(0, slash), whole);
    const cpp_int den = parse_integer(text.substr(slash + 1), whole);
    if (den == 0) throw PreconditionError("rational '" + std::string(whole) + "' has a zero denominator");
    value = Rational(num, den);
  } else {
    long exponent = 0;
    if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp_text = text.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      exponent = static_cast<long>(parse_integer(exp_text, whole));
      if (exp_negative) exponent = -exponent;
      text = text.substr(0, e);
    }
    std::string digits;
    if (const auto dot = text.find('.'); dot != std::string_view::npos) {
      digits = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
      exponent -= static_cast<long>(text.size() - dot - 1);
    } else {
      digits = std::string(text);
    }
    const cpp_int mantissa = parse_integer(digits, whole);
    value = exponent >= 0 ? Rational(mantissa * pow10(exponent)) : Rational(mantissa, pow10(-exponent));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace tms
