#include "dispersia/exponent.hpp"

#include <cctype>
#include <charconv>
#include <limits>

#include "dispersia/errors.hpp"

namespace dispersia {

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t parse_integer(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw InvalidArgument("not a rational number: '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto s = trim(text);
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const auto den = parse_integer(trim(s.substr(slash + 1)), text);
    if (den == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    return Rational(parse_integer(trim(s.substr(0, slash)), text), den);
  }
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    auto int_part = s.substr(0, dot);
    const auto frac_part = s.substr(dot + 1);
    if (frac_part.size() > 15) throw InvalidArgument("too many decimals: '" + std::string(text) + "'");
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (negative) int_part.remove_prefix(1);
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    const std::int64_t whole = int_part.empty() ? 0 : parse_integer(int_part, text);
    const std::int64_t frac = frac_part.empty() ? 0 : parse_integer(frac_part, text);
    if (frac < 0) throw InvalidArgument("not a rational number: '" + std::string(text) + "'");
    Rational r(whole * scale + frac, scale);
    return negative ? -r : r;
  }
  return Rational(parse_integer(s, text));
}

Exponent::Exponent(std::int64_t value) : Exponent(Rational(value)) {}

Exponent::Exponent(Rational value) : value_(value) {
  if (value < 1) throw InvalidArgument("exponent must lie in [1, inf], got " + to_string(value));
}

const Rational& Exponent::value() const {
  if (!value_) throw InvalidArgument("infinite exponent has no finite value");
  return *value_;
}

Rational Exponent::reciprocal() const { return value_ ? Rational(1) / *value_ : Rational(0); }

double Exponent::to_double() const {
  return value_ ? dispersia::to_double(*value_) : std::numeric_limits<double>::infinity();
}

std::strong_ordering operator<=>(const Exponent& a, const Exponent& b) {
  if (a.is_infinite() || b.is_infinite()) {
    return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
  }
  if (*a.value_ < *b.value_) return std::strong_ordering::less;
  if (*b.value_ < *a.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Exponent parse_exponent(std::string_view text) {
  const auto s = trim(text);
  if (s == "inf" || s == "infinity" || s == "Inf" || s == "∞") return Exponent::infinity();
  return Exponent(parse_rational(s));
}

std::string to_string(const Exponent& r) { return r.is_infinite() ? "inf" : to_string(r.value()); }

}  // namespace dispersia
