#include "dispersia/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dispersia/errors.hpp"

namespace dispersia {

Grid1D::Grid1D(int n_points, double length, GridKind kind) : n_points_(n_points), length_(length), kind_(kind) {
  if (n_points < kMinPoints) {
    throw InvalidArgument("grid needs at least " + std::to_string(kMinPoints) + " points, got " +
                          std::to_string(n_points));
  }
  if (!(length > 0.0) || !std::isfinite(length)) throw InvalidArgument("grid length must be positive and finite");
  if (kind == GridKind::hyperbolic_radial && length > kMaxRadius) {
    throw InvalidArgument("hyperbolic r_max above " + std::to_string(kMaxRadius) + " overflows sinh^2");
  }
}

double Grid1D::node(Eigen::Index j) const {
  const double h = spacing();
  return kind_ == GridKind::euclidean_torus ? static_cast<double>(j) * h : (static_cast<double>(j) + 0.5) * h;
}

Eigen::ArrayXd Grid1D::nodes() const {
  Eigen::ArrayXd r(n_points_);
  for (Eigen::Index j = 0; j < n_points_; ++j) r[j] = node(j);
  return r;
}

double Grid1D::weight(Eigen::Index j) const {
  const double h = spacing();
  if (kind_ == GridKind::euclidean_torus) return h;
  const double s = std::sinh(node(j));
  return 4.0 * std::numbers::pi * s * s * h;
}

Eigen::ArrayXd Grid1D::weights() const {
  Eigen::ArrayXd w(n_points_);
  for (Eigen::Index j = 0; j < n_points_; ++j) w[j] = weight(j);
  return w;
}

Grid1D make_grid(int n_points, double length, GridKind kind) { return Grid1D(n_points, length, kind); }

double periodic_offset(const Grid1D& grid, double position, double center) {
  const double L = grid.length();
  double d = std::fmod(position - center, L);
  if (d > 0.5 * L) d -= L;
  if (d <= -0.5 * L) d += L;
  return d;
}

}  // namespace dispersia
