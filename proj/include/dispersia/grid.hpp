#pragma once

#include <Eigen/Core>

namespace dispersia {

enum class GridKind { euclidean_torus, hyperbolic_radial };

/// Uniform lattice for one factor of a product domain.
///
/// A euclidean torus has nodes j*h, j = 0..n-1, and constant quadrature weight h.
/// A hyperbolic radial grid models the geodesic radius on H^3: nodes are cell
/// centred at (j + 1/2)*h so that sinh(r) never vanishes, and the quadrature
/// weight 4*pi*sinh(r)^2*h is the volume of the geodesic shell. The grid length
/// is r_max, the radius of the Dirichlet wall.
class Grid1D {
 public:
  static constexpr int kMinPoints = 8;
  /// Largest r_max for which sinh(r)^2 stays representable as a double.
  static constexpr double kMaxRadius = 340.0;

  Grid1D(int n_points, double length, GridKind kind);

  int size() const { return n_points_; }
  double length() const { return length_; }
  GridKind kind() const { return kind_; }
  double spacing() const { return length_ / n_points_; }
  bool is_radial() const { return kind_ == GridKind::hyperbolic_radial; }

  double node(Eigen::Index j) const;
  Eigen::ArrayXd nodes() const;
  double weight(Eigen::Index j) const;
  Eigen::ArrayXd weights() const;
  /// Sum of the quadrature weights.
  double measure() const { return weights().sum(); }

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  int n_points_;
  double length_;
  GridKind kind_;
};

Grid1D make_grid(int n_points, double length, GridKind kind);

/// Signed periodic offset of a torus node from `center`, in (-L/2, L/2].
double periodic_offset(const Grid1D& grid, double position, double center);

}  // namespace dispersia
