#include "dispersia/potential.hpp"

#include <cmath>

#include "dispersia/errors.hpp"

namespace dispersia {

PotentialSpec PotentialSpec::gaussian(double amplitude, double width, double center) {
  PotentialSpec s{PotentialFamily::gaussian_bump, amplitude, width, center, {}};
  s.validate();
  return s;
}

PotentialSpec PotentialSpec::sech_squared(double amplitude, double width, double center) {
  PotentialSpec s{PotentialFamily::sech_squared, amplitude, width, center, {}};
  s.validate();
  return s;
}

PotentialSpec PotentialSpec::custom(Eigen::ArrayXd samples) {
  PotentialSpec s{PotentialFamily::custom_samples, 0.0, 1.0, 0.0, std::move(samples)};
  s.validate();
  return s;
}

void PotentialSpec::validate() const {
  if (family == PotentialFamily::custom_samples) {
    if (samples.size() == 0) throw InvalidArgument("custom potential needs samples");
    if (!samples.allFinite()) throw InvalidArgument("potential samples must be finite");
    if ((samples < 0.0).any()) throw InvalidArgument("potential violates the sign condition V >= 0");
    return;
  }
  if (!(amplitude >= 0.0)) throw InvalidArgument("potential violates the sign condition V >= 0 (negative amplitude)");
  if (!(width > 0.0)) throw InvalidArgument("potential width must be positive");
}

double PotentialSpec::profile(double offset) const {
  const double y = offset / width;
  switch (family) {
    case PotentialFamily::gaussian_bump:
      return amplitude * std::exp(-0.5 * y * y);
    case PotentialFamily::sech_squared: {
      const double s = 1.0 / std::cosh(y);
      return amplitude * s * s;
    }
    case PotentialFamily::custom_samples:
      break;
  }
  throw InvalidArgument("custom potentials have no analytic profile");
}

Eigen::ArrayXd sample_potential(const PotentialSpec& spec, const Grid1D& grid) {
  spec.validate();
  if (spec.family == PotentialFamily::custom_samples) {
    if (spec.samples.size() != grid.size()) throw InvalidArgument("custom potential does not match the grid");
    return spec.samples;
  }
  Eigen::ArrayXd v(grid.size());
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    const double x = grid.node(j);
    v[j] = spec.profile(grid.is_radial() ? x - spec.center : periodic_offset(grid, x, spec.center));
  }
  return v;
}

}  // namespace dispersia
