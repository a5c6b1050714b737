#include "dispersia/euclidean.hpp"

#include <algorithm>
#include <cmath>

#include "dispersia/errors.hpp"
#include "dispersia/fft.hpp"
#include "dispersia/hyperbolic.hpp"

namespace dispersia {

namespace {

void require_factor_grid(const PropagatorSpec& spec, const Field& u) {
  if (u.rank() != 1) throw InvalidArgument("factor propagators act on rank-1 fields");
  if (u.grid(0) != spec.grid) throw InvalidArgument("field does not live on the propagator's grid");
}

void kinetic_step(Eigen::ArrayXcd& values, const Shape& shape, int axis, const Grid1D& grid, double c, double t) {
  const Eigen::ArrayXd k = fft::wavenumbers(grid);
  const Eigen::ArrayXd phase = -t * c * k.square();
  Eigen::ArrayXcd multiplier(k.size());
  for (Eigen::Index j = 0; j < k.size(); ++j) multiplier[j] = std::polar(1.0 / grid.size(), phase[j]);
  fft::transform_axis(values, shape, axis, fft::Direction::forward);
  fft::scale_axis(values, shape, axis, multiplier);
  fft::transform_axis(values, shape, axis, fft::Direction::backward);
}

Eigen::ArrayXcd potential_phase(const Eigen::ArrayXd& v, double tau) {
  Eigen::ArrayXcd p(v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) p[j] = std::polar(1.0, -tau * v[j]);
  return p;
}

void splitstep_along_axis(Eigen::ArrayXcd& values, const Shape& shape, int axis, const PropagatorSpec& spec,
                          double t) {
  if (t < 0.0) throw InvalidArgument("split-step propagation needs t >= 0");
  if (t == 0.0) return;
  const auto n = std::max(1L, static_cast<long>(std::ceil(t * spec.split_steps_per_unit_time - 1e-9)));
  const double dt = t / static_cast<double>(n);
  const Eigen::ArrayXcd half = potential_phase(*spec.potential, 0.5 * dt);
  const Eigen::ArrayXcd full = potential_phase(*spec.potential, dt);
  // Adjacent half steps are merged into one full potential step.
  fft::scale_axis(values, shape, axis, half);
  for (long s = 0; s < n; ++s) {
    kinetic_step(values, shape, axis, spec.grid, spec.laplacian_coefficient, dt);
    fft::scale_axis(values, shape, axis, s + 1 < n ? full : half);
  }
}

}  // namespace

PropagatorSpec PropagatorSpec::free(const Grid1D& grid, double laplacian_coefficient) {
  PropagatorSpec s{PropagatorKind::free, grid, std::nullopt, laplacian_coefficient, Rational(1, 2)};
  s.validate();
  return s;
}

PropagatorSpec PropagatorSpec::with_potential(const Grid1D& grid, Eigen::ArrayXd potential,
                                              double laplacian_coefficient, int steps_per_unit_time) {
  PropagatorSpec s{PropagatorKind::free_plus_potential, grid, std::move(potential), laplacian_coefficient,
                   Rational(1, 2), steps_per_unit_time};
  s.validate();
  return s;
}

PropagatorSpec PropagatorSpec::hyperbolic(const Grid1D& grid) {
  PropagatorSpec s{PropagatorKind::hyperbolic_radial, grid, std::nullopt, 1.0, Rational(3, 2)};
  s.validate();
  return s;
}

void PropagatorSpec::validate() const {
  if (!(laplacian_coefficient > 0.0)) throw InvalidArgument("laplacian coefficient must be positive");
  if (claimed_decay_exponent < 0) throw InvalidArgument("claimed decay exponent must be non-negative");
  if (potential.has_value() != (kind == PropagatorKind::free_plus_potential)) {
    throw InvalidArgument("a potential is required exactly for free-plus-potential factors");
  }
  if (kind == PropagatorKind::hyperbolic_radial) {
    if (!grid.is_radial()) throw InvalidArgument("hyperbolic factors need a hyperbolic-radial grid");
  } else if (grid.is_radial()) {
    throw InvalidArgument("euclidean factors need a torus grid");
  }
  if (potential) {
    if (potential->size() != grid.size()) throw InvalidArgument("potential samples do not match the grid");
    if (!potential->allFinite()) throw InvalidArgument("potential samples must be finite");
    if (split_steps_per_unit_time < 1) throw InvalidArgument("split steps per unit time must be positive");
  }
}

void apply_factor_along_axis(Eigen::ArrayXcd& values, const Shape& shape, int axis, const PropagatorSpec& spec,
                             double t) {
  switch (spec.kind) {
    case PropagatorKind::free:
      kinetic_step(values, shape, axis, spec.grid, spec.laplacian_coefficient, t);
      return;
    case PropagatorKind::free_plus_potential:
      splitstep_along_axis(values, shape, axis, spec, t);
      return;
    case PropagatorKind::hyperbolic_radial:
      h3_evolve_axis(values, shape, axis, spec.grid, t);
      return;
  }
}

Field free_propagate(const PropagatorSpec& spec, const Field& u, double t) {
  if (spec.kind != PropagatorKind::free) throw InvalidArgument("free_propagate needs a free factor");
  require_factor_grid(spec, u);
  Eigen::ArrayXcd v = u.values();
  kinetic_step(v, u.shape(), 0, spec.grid, spec.laplacian_coefficient, t);
  return u.with_values(std::move(v));
}

Field splitstep_propagate(const PropagatorSpec& spec, const Field& u, double t) {
  if (spec.kind != PropagatorKind::free_plus_potential || !spec.potential) {
    throw InvalidArgument("splitstep_propagate needs a free-plus-potential factor");
  }
  require_factor_grid(spec, u);
  Eigen::ArrayXcd v = u.values();
  splitstep_along_axis(v, u.shape(), 0, spec, t);
  return u.with_values(std::move(v));
}

Field product_propagate(std::span<const PropagatorSpec> specs, const Field& u, double t) {
  if (specs.empty() || static_cast<int>(specs.size()) != u.rank()) {
    throw InvalidArgument("one propagator spec per field axis required");
  }
  for (int a = 0; a < u.rank(); ++a) {
    if (specs[static_cast<std::size_t>(a)].grid != u.grid(a)) {
      throw InvalidArgument("propagator grid does not match field axis " + std::to_string(a));
    }
  }
  Eigen::ArrayXcd v = u.values();
  for (int a = 0; a < u.rank(); ++a) apply_factor_along_axis(v, u.shape(), a, specs[static_cast<std::size_t>(a)], t);
  return u.with_values(std::move(v));
}

ProductPropagator::ProductPropagator(std::vector<PropagatorSpec> specs) : specs_(std::move(specs)) {
  if (specs_.empty() || specs_.size() > Field::kMaxRank) throw InvalidArgument("products have 1 to 3 factors");
  for (const auto& s : specs_) s.validate();
}

Rational ProductPropagator::claimed_decay_exponent() const {
  Rational sum(0);
  for (const auto& s : specs_) sum += s.claimed_decay_exponent;
  return sum;
}

Series dispersive_ratio_series(const Evolution& propagate, const Field& u0, std::span<const double> times,
                               const Exponent& r, const Exponent& r_tilde, TimeStepping stepping) {
  if (r < r_tilde) throw InvalidArgument("dispersive ratios need r >= r_tilde");
  const double denominator = lp_norm(u0, r_tilde);
  if (!(denominator > 0.0)) throw InvalidArgument("initial data must be nonzero");
  Series s = norm_series(propagate, u0, times, r, stepping);
  for (auto& p : s) p.value /= denominator;
  return s;
}

}  // namespace dispersia
