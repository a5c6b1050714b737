#pragma once

#include <Eigen/Core>

#include "dispersia/euclidean.hpp"
#include "dispersia/field.hpp"

namespace dispersia {

enum class RotationDirection { forward, inverse };

/// Lattice bijection (j, k) -> (j + k mod N, j - k mod N) on an N x N torus with odd N.
/// forward: v[(j+k) % N, (j-k) % N] = u[j, k]; inverse undoes it exactly.
Field two_particle_rotate(const Field& u, RotationDirection direction);

/// Samples of V(x - y) on the square torus: entry (j, k) is V[(j - k) mod N], where
/// V[m] is the potential at relative displacement m*h.
Field pair_potential(const Grid1D& grid, const Eigen::ArrayXd& potential);

/// Two-particle flow iu_t + Delta_{x,y} u - V(x - y) u = 0 on an odd square torus, solved
/// in the coordinates x' = x + y, y' = x - y.
///
/// In those coordinates the operator is 2(-d^2/dx'^2) + [2(-d^2/dy'^2) + V(y')], a sum of
/// two factor operators, so the rotated solve is a product flow. Coordinates are centred on
/// the grid midpoint. Rotated nodes with x' + y' even are original nodes (copied exactly);
/// the others sit at half-cell offsets and are filled by exact trigonometric interpolation.
/// The rotated torus covers only the central diamond |x - c| + |y - c| <= L/2 of the original
/// square; from_rotated_frame returns zero outside it. Results match the original-coordinate
/// flow while the solution stays inside the diamond.
class TwoParticleFlow {
 public:
  TwoParticleFlow(const Grid1D& grid, Eigen::ArrayXd potential,
                  int steps_per_unit_time = PropagatorSpec::kDefaultSplitSteps);

  Field to_rotated_frame(const Field& u) const;
  Field from_rotated_frame(const Field& v) const;
  Field propagate_rotated(const Field& v, double t) const { return rotated_flow_(v, t); }
  Field operator()(const Field& u, double t) const;

  const Grid1D& grid() const { return grid_; }
  const ProductPropagator& rotated_flow() const { return rotated_flow_; }

 private:
  Grid1D grid_;
  ProductPropagator rotated_flow_;
};

/// Strang splitting in the original coordinates: exact 2-D kinetic flow and the multiplier
/// exp(-i dt V(x - y)), ceil(t * steps_per_unit_time) steps.
Field pair_splitstep_propagate(const Grid1D& grid, const Eigen::ArrayXd& potential, const Field& u0, double t,
                               int steps_per_unit_time);

Field two_particle_propagate(const Grid1D& grid, const Eigen::ArrayXd& potential, const Field& u0, double t,
                             int steps_per_unit_time);

}  // namespace dispersia
