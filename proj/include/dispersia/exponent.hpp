#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace dispersia {

using Rational = boost::rational<std::int64_t>;

double to_double(const Rational& r);
std::string to_string(const Rational& r);

/// Parses "3", "-4/3" or a terminating decimal such as "1.25" into an exact rational.
Rational parse_rational(std::string_view text);

/// A Lebesgue exponent r in [1, ∞]. Infinity is its own state, never a float sentinel.
class Exponent {
 public:
  Exponent(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Exponent(Rational value);      // NOLINT(google-explicit-constructor)

  static Exponent infinity() { return Exponent(); }

  bool is_infinite() const { return !value_.has_value(); }
  /// Throws InvalidArgument for the infinite exponent.
  const Rational& value() const;
  /// 1/r, zero for r = ∞.
  Rational reciprocal() const;
  double to_double() const;

  friend bool operator==(const Exponent& a, const Exponent& b) = default;
  friend std::strong_ordering operator<=>(const Exponent& a, const Exponent& b);

 private:
  Exponent() = default;
  std::optional<Rational> value_;
};

/// Accepts "inf" / "infinity" / "∞" or any rational accepted by parse_rational.
Exponent parse_exponent(std::string_view text);
std::string to_string(const Exponent& r);

}  // namespace dispersia
