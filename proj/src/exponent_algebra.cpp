#include "dispersia/exponent_algebra.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "dispersia/errors.hpp"

namespace dispersia {

namespace {

const Rational kZero(0);
const Rational kHalf(1, 2);

/// (1 + x)^2 V(x) integrated over x >= R with V <= A e^{-k (x - d)}, d <= R:
/// A e^{-k (R - d)} [(1 + R)^2 / k + 2 (1 + R) / k^2 + 2 / k^3].
double exponential_tail(double amplitude, double k, double R, double d) {
  const double one_r = 1.0 + R;
  return amplitude * std::exp(-k * (R - d)) * (one_r * one_r / k + 2.0 * one_r / (k * k) + 2.0 / (k * k * k));
}

bool in_triangle(const ExponentPair& pair, const Rational& total_dimension) {
  if (total_dimension <= 0) throw InvalidArgument("total dimension must be positive");
  const Rational& x = pair.inv_p();
  const Rational& y = pair.inv_q();
  if (x == kZero && y == kHalf) return true;
  if (x == kZero || y == kZero) return false;
  return 2 * x + total_dimension * y >= total_dimension / 2;
}

}  // namespace

ExponentPair::ExponentPair(Rational inv_p, Rational inv_q) : inv_p_(inv_p), inv_q_(inv_q) {
  if (inv_p < 0 || inv_p > kHalf || inv_q < 0 || inv_q > kHalf) {
    throw InvalidArgument("exponent pair reciprocals must lie in [0, 1/2]");
  }
}

ExponentPair ExponentPair::from_exponents(const Exponent& p, const Exponent& q) {
  return ExponentPair(p.reciprocal(), q.reciprocal());
}

Exponent ExponentPair::p() const { return inv_p_ == kZero ? Exponent::infinity() : Exponent(Rational(1) / inv_p_); }
Exponent ExponentPair::q() const { return inv_q_ == kZero ? Exponent::infinity() : Exponent(Rational(1) / inv_q_); }

DispersionIndex::DispersionIndex(Rational a, Rational b) : a_(a), b_(b) {
  if (a < 0 || b < 0) throw InvalidArgument("decay exponents a, b must be non-negative");
  if (a + b <= 0) throw InvalidArgument("dispersion index a + b must be positive");
}

DispersionIndex DispersionIndex::total(Rational ab) { return DispersionIndex(ab, Rational(0)); }

const char* to_string(Admissibility a) {
  switch (a) {
    case Admissibility::admissible:
      return "admissible";
    case Admissibility::endpoint:
      return "endpoint";
    case Admissibility::not_admissible:
      return "not-admissible";
  }
  return "?";
}

Admissibility is_admissible(const ExponentPair& pair, const DispersionIndex& idx) {
  const Rational ab = idx.ab();
  const Rational& x = pair.inv_p();
  const Rational& y = pair.inv_q();
  if (x + ab * y != ab / 2) return Admissibility::not_admissible;
  // Both reciprocals already lie in [0, 1/2], which covers 2 <= p and 2 <= q.
  if (ab > 1) {
    const Rational endpoint_inv_q = (ab - 1) / (2 * ab);
    if (y < endpoint_inv_q) return Admissibility::not_admissible;
    if (x == kHalf && y == endpoint_inv_q) return Admissibility::endpoint;
    return Admissibility::admissible;
  }
  if (!(x < ab / 2) || y == kZero) return Admissibility::not_admissible;
  return Admissibility::admissible;
}

bool in_triangle_T(const ExponentPair& pair, int m, int n) {
  if (m < 2 || n < 2) throw InvalidArgument("the triangle T is defined for H^m x H^n with m, n >= 2");
  return in_triangle(pair, Rational(m + n));
}

Rational interpolation_exponent(const Exponent& q, const DispersionIndex& idx) {
  if (q < Exponent(2)) throw InvalidArgument("interpolation exponent needs q >= 2");
  return idx.ab() * (Rational(1) - 2 * q.reciprocal());
}

Exponent dual_exponent(const Exponent& q) {
  const Rational inv = Rational(1) - q.reciprocal();
  return inv == kZero ? Exponent::infinity() : Exponent(Rational(1) / inv);
}

Rational critical_power(int m, int n) {
  if (m < 1 || n < 1) throw InvalidArgument("factor dimensions must be positive");
  return Rational(1) + Rational(4, m + n);
}

NLSExponentSelection select_nls_exponents(int m, int n, const Rational& gamma) {
  const Rational bound = critical_power(m, n);
  if (gamma <= 1 || gamma > bound) {
    throw HypothesisViolation("nonlinearity power gamma = " + to_string(gamma) + " outside (1, 1 + 4/(m+n)] = (1, " +
                              to_string(bound) + "] for m = " + std::to_string(m) + ", n = " + std::to_string(n));
  }
  const Rational total(m + n);
  const Rational beta = (gamma - 1) * total / 2;
  const Rational p = 1 + gamma;
  NLSExponentSelection sel{m, n, gamma, beta, p, p, p, p};

  const Rational p_tilde_dual = dual_exponent(Exponent(sel.p_tilde)).value();
  const Rational q_tilde_dual = dual_exponent(Exponent(sel.q_tilde)).value();
  if (sel.p != p_tilde_dual * gamma || sel.q != q_tilde_dual * gamma) {
    throw std::logic_error("self-mapping identity p = p~' gamma failed");
  }
  if (gamma != 1 + 2 * beta / total || beta <= 0 || beta > 2) throw std::logic_error("beta out of (0, 2]");
  const ExponentPair pair(Rational(1) / sel.p, Rational(1) / sel.q);
  if (!in_triangle(pair, total)) throw std::logic_error("selected pair left the triangle");
  return sel;
}

WeightIntegral check_weight_integral(const PotentialSpec& pot, double r_max, int n_quad) {
  pot.validate();
  if (!(r_max > 0.0)) throw InvalidArgument("r_max must be positive");
  if (n_quad < 2) throw InvalidArgument("n_quad must be at least 2");
  const bool custom = pot.family == PotentialFamily::custom_samples;
  if (custom && pot.samples.size() != n_quad + 1) {
    throw InvalidArgument("custom samples must sit on the n_quad + 1 quadrature nodes");
  }
  const double h = 2.0 * r_max / n_quad;
  double sum = 0.0;
  for (int i = 0; i <= n_quad; ++i) {
    const double x = -r_max + i * h;
    const double v = custom ? pot.samples[i] : pot.profile(x - pot.center);
    const double w = (i == 0 || i == n_quad) ? 0.5 : 1.0;
    sum += w * (1.0 + std::abs(x)) * (1.0 + std::abs(x)) * v;
  }
  WeightIntegral out{sum * h, std::nullopt};
  if (custom) return out;

  const double d = std::abs(pot.center);
  if (r_max <= d) {
    out.tail_bound = std::numeric_limits<double>::infinity();
    return out;
  }
  double k = 0.0;
  double amplitude = pot.amplitude;
  if (pot.family == PotentialFamily::sech_squared) {
    // sech^2(y) <= 4 e^{-2|y|}
    k = 2.0 / pot.width;
    amplitude *= 4.0;
  } else {
    // (x - d)^2 >= (R - d)(x - d) for x >= R
    k = (r_max - d) / (2.0 * pot.width * pot.width);
  }
  out.tail_bound = 2.0 * exponential_tail(amplitude, k, r_max, d);
  return out;
}

YajimaCheck check_yajima_parameters(int n, const Rational& p0, const Rational& delta) {
  if (n < 3) throw InvalidArgument("the Yajima conditions are stated for n >= 3");
  const bool ok = p0 > Rational(n, 2) && delta > Rational(3 * n, 2) + 1;
  return {ok, n == 3 ? 0 : (n - 1) / 2};
}

}  // namespace dispersia
