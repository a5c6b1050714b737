#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "dispersia/decay.hpp"
#include "dispersia/exponent.hpp"
#include "dispersia/field.hpp"

namespace dispersia {

enum class PropagatorKind { free, free_plus_potential, hyperbolic_radial };

/// One factor flow e^{-itH}.
///
/// Euclidean factors use H = -c d^2/dx^2 + V on a torus, i.e. the Fourier multiplier
/// exp(-i t c xi^2) for the kinetic part and exp(-i t V) for the potential part.
/// A hyperbolic-radial factor is the radial Laplace-Beltrami flow on H^3.
struct PropagatorSpec {
  static constexpr int kDefaultSplitSteps = 64;

  PropagatorKind kind;
  Grid1D grid;
  std::optional<Eigen::ArrayXd> potential;
  double laplacian_coefficient = 1.0;
  Rational claimed_decay_exponent{1, 2};
  int split_steps_per_unit_time = kDefaultSplitSteps;

  static PropagatorSpec free(const Grid1D& grid, double laplacian_coefficient = 1.0);
  static PropagatorSpec with_potential(const Grid1D& grid, Eigen::ArrayXd potential,
                                       double laplacian_coefficient = 1.0, int steps_per_unit_time = kDefaultSplitSteps);
  static PropagatorSpec hyperbolic(const Grid1D& grid);

  void validate() const;
};

/// Exact spectral flow of a free factor on a rank-1 field.
Field free_propagate(const PropagatorSpec& spec, const Field& u, double t);

/// Strang splitting: half potential step, exact kinetic step, half potential step,
/// repeated ceil(t * split_steps_per_unit_time) times. Requires t >= 0.
Field splitstep_propagate(const PropagatorSpec& spec, const Field& u, double t);

/// Applies each factor flow along its own axis: axis 0 first, then 1, then 2.
Field product_propagate(std::span<const PropagatorSpec> specs, const Field& u, double t);

/// In-place application of one factor flow along `axis` of a row-major array.
void apply_factor_along_axis(Eigen::ArrayXcd& values, const Shape& shape, int axis, const PropagatorSpec& spec,
                             double t);

/// The flow e^{-itL} of a sum L = H_1 + ... + H_k of factor operators, as an Evolution.
class ProductPropagator {
 public:
  explicit ProductPropagator(std::vector<PropagatorSpec> specs);

  Field operator()(const Field& u, double t) const { return product_propagate(specs_, u, t); }
  const std::vector<PropagatorSpec>& specs() const { return specs_; }
  /// Sum of the factors' claimed decay exponents.
  Rational claimed_decay_exponent() const;

 private:
  std::vector<PropagatorSpec> specs_;
};

/// ||e^{-itL} u0||_{L^r} / ||u0||_{L^r_tilde} for each t, with wrap-around flags. Requires r >= r_tilde.
Series dispersive_ratio_series(const Evolution& propagate, const Field& u0, std::span<const double> times,
                               const Exponent& r, const Exponent& r_tilde,
                               TimeStepping stepping = TimeStepping::direct);

}  // namespace dispersia
