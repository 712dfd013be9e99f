#include "floorsum/rational.hpp"

#include "floorsum/errors.hpp"

#include <cctype>

namespace floorsum {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  s = trim(s);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw ParseError("malformed rational '" + std::string(whole) + "'");
  BigInt v = 0;
  for (const char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("malformed rational '" + std::string(whole) + "'");
    }
    v = v * 10 + (c - '0');
  }
  return negative ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s, text));
  const BigInt num = parse_integer(s.substr(0, slash), text);
  const BigInt den = parse_integer(s.substr(slash + 1), text);
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string numerator_string(const Rational& r) { return numerator(r).str(); }
std::string denominator_string(const Rational& r) { return denominator(r).str(); }

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace floorsum
