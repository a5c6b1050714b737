#pragma once

#include <Eigen/Core>

#include "dispersia/field.hpp"

namespace dispersia {

/// Bottom of the spectrum of -Laplace-Beltrami on H^3 (rho^2 with rho = 1).
inline constexpr double kH3RhoSquared = 1.0;

/// Radial function on H^3 sampled on a hyperbolic-radial grid.
///
/// The dual lattice is lambda_k = k * pi / r_max, k = 1..n: the sine modes that vanish
/// at r = 0 and at the Dirichlet wall r = r_max.
class SphericalProfile {
 public:
  explicit SphericalProfile(Field samples);

  const Field& field() const { return samples_; }
  const Grid1D& grid() const { return samples_.grid(0); }
  const Eigen::ArrayXcd& values() const { return samples_.values(); }
  Eigen::ArrayXd dual_lattice() const;
  double dual_spacing() const;

 private:
  Field samples_;
};

Eigen::ArrayXd spherical_dual_lattice(const Grid1D& grid);

/// Spectral coefficients on the dual lattice.
///
/// Normalization: fhat(lambda) = 4*pi/lambda * int sinh(r) f(r) sin(lambda r) dr, the
/// spherical transform against phi_lambda(r) = sin(lambda r) / (lambda sinh r), discretized
/// by the midpoint rule. Plancherel then reads ||f||^2 = sum_k |fhat_k|^2 * weight_k with
/// weight_k = lambda_k^2 * dlambda / (2 pi^2), halved for the last mode.
struct SphericalSpectrum {
  Grid1D grid;
  Eigen::ArrayXd lambda;
  Eigen::ArrayXcd coefficients;

  Eigen::ArrayXd plancherel_weights() const;
};

SphericalSpectrum spherical_transform(const SphericalProfile& f);
SphericalProfile inverse_spherical_transform(const SphericalSpectrum& spectrum);

/// e^{it Delta_H3} on radial data: multiplier exp(-i t (lambda^2 + rho^2)).
SphericalProfile h3_propagate(const SphericalProfile& f, double t);

/// Axis-wise H^3 radial flow on a field whose axes are all hyperbolic-radial.
Field h3_product_propagate(const Field& u, double t);

/// In-place radial flow along one axis of a row-major array.
void h3_evolve_axis(Eigen::ArrayXcd& values, const Shape& shape, int axis, const Grid1D& grid, double t);

}  // namespace dispersia
