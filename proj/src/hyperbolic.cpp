#include "dispersia/hyperbolic.hpp"

#include <cmath>
#include <numbers>

#include "dispersia/errors.hpp"
#include "dispersia/fft.hpp"

namespace dispersia {

namespace {

void require_radial(const Grid1D& grid) {
  if (!grid.is_radial()) throw InvalidArgument("spherical analysis needs a hyperbolic-radial grid");
}

}  // namespace

SphericalProfile::SphericalProfile(Field samples) : samples_(std::move(samples)) {
  if (samples_.rank() != 1) throw InvalidArgument("spherical profiles are rank-1");
  require_radial(samples_.grid(0));
}

Eigen::ArrayXd SphericalProfile::dual_lattice() const { return spherical_dual_lattice(grid()); }

double SphericalProfile::dual_spacing() const { return std::numbers::pi / grid().length(); }

Eigen::ArrayXd spherical_dual_lattice(const Grid1D& grid) {
  require_radial(grid);
  return Eigen::ArrayXd::LinSpaced(grid.size(), 1.0, grid.size()) * (std::numbers::pi / grid.length());
}

Eigen::ArrayXd SphericalSpectrum::plancherel_weights() const {
  const double dlambda = std::numbers::pi / grid.length();
  Eigen::ArrayXd w = lambda.square() * (dlambda / (2.0 * std::numbers::pi * std::numbers::pi));
  w[w.size() - 1] *= 0.5;
  return w;
}

SphericalSpectrum spherical_transform(const SphericalProfile& f) {
  const auto& g = f.grid();
  const Shape shape{g.size()};
  Eigen::ArrayXcd v = f.values() * g.nodes().sinh();
  fft::dst2_axis(v, shape, 0);
  const Eigen::ArrayXd lambda = spherical_dual_lattice(g);
  // dst2 yields 2 * sum_j F_j sin(lambda_k r_j).
  v *= (2.0 * std::numbers::pi * g.spacing() / lambda);
  return {g, lambda, std::move(v)};
}

SphericalProfile inverse_spherical_transform(const SphericalSpectrum& spectrum) {
  const auto& g = spectrum.grid;
  require_radial(g);
  if (spectrum.coefficients.size() != g.size()) throw InvalidArgument("spectrum does not match its grid");
  const Shape shape{g.size()};
  Eigen::ArrayXcd v = spectrum.coefficients * (spectrum.lambda / (2.0 * std::numbers::pi * g.spacing()));
  fft::dst3_axis(v, shape, 0);
  v /= (2.0 * g.size()) * g.nodes().sinh();
  return SphericalProfile(Field({g}, std::move(v)));
}

void h3_evolve_axis(Eigen::ArrayXcd& values, const Shape& shape, int axis, const Grid1D& grid, double t) {
  require_radial(grid);
  const Eigen::ArrayXd s = grid.nodes().sinh();
  const Eigen::ArrayXd lambda = spherical_dual_lattice(grid);
  Eigen::ArrayXcd multiplier(grid.size());
  for (Eigen::Index k = 0; k < grid.size(); ++k) {
    multiplier[k] = std::polar(1.0 / (2.0 * grid.size()), -t * (lambda[k] * lambda[k] + kH3RhoSquared));
  }
  fft::scale_axis(values, shape, axis, s);
  fft::dst2_axis(values, shape, axis);
  fft::scale_axis(values, shape, axis, multiplier);
  fft::dst3_axis(values, shape, axis);
  fft::scale_axis(values, shape, axis, Eigen::ArrayXd(s.inverse()));
}

SphericalProfile h3_propagate(const SphericalProfile& f, double t) {
  Eigen::ArrayXcd v = f.values();
  h3_evolve_axis(v, f.field().shape(), 0, f.grid(), t);
  return SphericalProfile(f.field().with_values(std::move(v)));
}

Field h3_product_propagate(const Field& u, double t) {
  for (int a = 0; a < u.rank(); ++a) {
    if (!u.grid(a).is_radial()) throw InvalidArgument("h3_product_propagate needs hyperbolic-radial axes only");
  }
  Eigen::ArrayXcd v = u.values();
  for (int a = 0; a < u.rank(); ++a) h3_evolve_axis(v, u.shape(), a, u.grid(a), t);
  return u.with_values(std::move(v));
}

}  // namespace dispersia
