#pragma once

#include <Eigen/Core>

#include "dispersia/grid.hpp"

namespace dispersia {

enum class PotentialFamily { gaussian_bump, sech_squared, custom_samples };

/// Real one-variable potential V(x). Built-in families are sampled analytically:
///   gaussian-bump  V = A exp(-(x - c)^2 / (2 w^2))
///   sech-squared   V = A sech^2((x - c) / w)
/// Amplitude must be non-negative (repulsive potentials only).
struct PotentialSpec {
  PotentialFamily family = PotentialFamily::gaussian_bump;
  double amplitude = 0.0;
  double width = 1.0;
  double center = 0.0;
  /// Node values for custom-samples potentials.
  Eigen::ArrayXd samples;

  static PotentialSpec gaussian(double amplitude, double width, double center = 0.0);
  static PotentialSpec sech_squared(double amplitude, double width, double center = 0.0);
  static PotentialSpec custom(Eigen::ArrayXd samples);

  /// Throws InvalidArgument on negative amplitude, non-positive width, or negative samples.
  void validate() const;
  /// Value at signed distance `offset` from the center; built-in families only.
  double profile(double offset) const;
};

/// Samples V on a torus using the periodic minimal-image distance to the center.
Eigen::ArrayXd sample_potential(const PotentialSpec& spec, const Grid1D& grid);

}  // namespace dispersia
