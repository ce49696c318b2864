#include "hpt/scalar.hpp"

#include <cctype>

namespace hpt {

namespace {

using Integer = boost::multiprecision::mpz_int;

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size())
    throw std::invalid_argument("malformed scalar '" + std::string(whole) + "'");
  for (std::size_t i = pos; i < text.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw std::invalid_argument("malformed scalar '" + std::string(whole) + "'");
  Integer value(std::string(text.substr(pos)));
  return negative ? Integer(-value) : value;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Scalar(parse_integer(text, text));
  const Integer num = parse_integer(text.substr(0, slash), text);
  const Integer den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Scalar(num, den);
}

std::string format_scalar(const Scalar& value) {
  const auto num = boost::multiprecision::numerator(value);
  const auto den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace hpt
