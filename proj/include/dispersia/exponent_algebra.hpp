#pragma once

#include <optional>

#include "dispersia/exponent.hpp"
#include "dispersia/potential.hpp"

namespace dispersia {

/// Exponent couple (p, q) stored by reciprocals (1/p, 1/q), each in [0, 1/2]; 0 encodes ∞.
class ExponentPair {
 public:
  ExponentPair(Rational inv_p, Rational inv_q);
  static ExponentPair from_exponents(const Exponent& p, const Exponent& q);

  const Rational& inv_p() const { return inv_p_; }
  const Rational& inv_q() const { return inv_q_; }
  Exponent p() const;
  Exponent q() const;

  friend bool operator==(const ExponentPair&, const ExponentPair&) = default;

 private:
  Rational inv_p_;
  Rational inv_q_;
};

/// The dispersion index a + b of a product flow whose factors decay like |t|^{-a} and |t|^{-b}.
class DispersionIndex {
 public:
  DispersionIndex(Rational a, Rational b);
  /// Index with a = ab, b = 0.
  static DispersionIndex total(Rational ab);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  Rational ab() const { return a_ + b_; }

 private:
  Rational a_;
  Rational b_;
};

enum class Admissibility { admissible, endpoint, not_admissible };

const char* to_string(Admissibility a);

/// Strichartz admissibility relative to the index a + b.
///
/// ab > 1:      1/p + ab/q = ab/2, 2 <= p <= ∞, 2 <= q <= 2ab/(ab - 1); the pair
///              (2, 2ab/(ab - 1)) is the endpoint.
/// 0 < ab <= 1: the same scaling line with p > 2/ab and 2 <= q < ∞, both strict.
Admissibility is_admissible(const ExponentPair& pair, const DispersionIndex& idx);

/// Membership of (1/p, 1/q) in the Strichartz triangle of H^m x H^n:
/// (0, 1/2] x (0, 1/2] with 2/p + (m + n)/q >= (m + n)/2, plus the isolated point (0, 1/2).
bool in_triangle_T(const ExponentPair& pair, int m, int n);


/// sigma(q) = (a + b)(1 - 2/q), the decay rate of the L^{q'} -> L^q estimate.
Rational interpolation_exponent(const Exponent& q, const DispersionIndex& idx);

/// Hölder conjugate: 1/q + 1/q' = 1.
Exponent dual_exponent(const Exponent& q);

struct NLSExponentSelection {
  int m;
  int n;
  Rational gamma;
  Rational beta;
  Rational p;
  Rational q;
  Rational p_tilde;
  Rational q_tilde;
};

/// Largest admissible power 1 + 4/(m + n).
Rational critical_power(int m, int n);

/// Chooses beta = (gamma - 1)(m + n)/2 and p = q = p~ = q~ = 1 + gamma for the fixed-point space.
/// Verifies p = p~' gamma, q = q~' gamma and triangle membership exactly.
/// Throws HypothesisViolation unless 1 < gamma <= 1 + 4/(m + n).
NLSExponentSelection select_nls_exponents(int m, int n, const Rational& gamma);

struct WeightIntegral {
  double value;
  /// Analytic bound on the contribution from |x| > r_max; absent for custom samples.
  std::optional<double> tail_bound;
};

/// Trapezoid rule for the integral of (1 + |x|)^2 V(x) over [-r_max, r_max] with n_quad intervals.
WeightIntegral check_weight_integral(const PotentialSpec& pot, double r_max, int n_quad);

struct YajimaCheck {
  bool ok;
  int l0;
};

/// Scalar conditions n >= 3, p0 > n/2, delta > 3n/2 + 1 and the derivative count l0.
YajimaCheck check_yajima_parameters(int n, const Rational& p0, const Rational& delta);

}  // namespace dispersia
