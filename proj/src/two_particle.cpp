#include "dispersia/two_particle.hpp"

#include <algorithm>
#include <cmath>

#include "dispersia/errors.hpp"
#include "dispersia/fft.hpp"

namespace dispersia {

namespace {

Eigen::Index wrap(Eigen::Index i, Eigen::Index n) { return ((i % n) + n) % n; }

void require_odd_square(const Field& u) {
  if (u.rank() != 2 || u.grid(0) != u.grid(1)) {
    throw InvalidArgument("two-particle fields need a square torus grid");
  }
  if (u.grid(0).is_radial()) throw InvalidArgument("two-particle fields need a euclidean torus");
  if (u.grid(0).size() % 2 == 0) throw InvalidArgument("two-particle grids must have odd point count");
}

void require_odd(const Grid1D& grid) {
  if (grid.is_radial()) throw InvalidArgument("two-particle fields need a euclidean torus");
  if (grid.size() % 2 == 0) throw InvalidArgument("two-particle grids must have odd point count");
}

Eigen::ArrayXd rotated_potential(const Grid1D& grid, const Eigen::ArrayXd& v) {
  require_odd(grid);
  if (v.size() != grid.size()) throw InvalidArgument("potential does not match the grid");
  const Eigen::Index n = grid.size();
  const Eigen::Index m = (n - 1) / 2;
  Eigen::ArrayXd out(n);
  for (Eigen::Index j = 0; j < n; ++j) out[j] = v[wrap(j - m, n)];
  return out;
}

}  // namespace

Field two_particle_rotate(const Field& u, RotationDirection direction) {
  require_odd_square(u);
  const Eigen::Index n = u.grid(0).size();
  Eigen::ArrayXcd out(u.size());
  const auto& in = u.values();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const Eigen::Index rotated = ((j + k) % n) * n + wrap(j - k, n);
      if (direction == RotationDirection::forward) {
        out[rotated] = in[j * n + k];
      } else {
        out[j * n + k] = in[rotated];
      }
    }
  }
  return u.with_values(std::move(out));
}

Field pair_potential(const Grid1D& grid, const Eigen::ArrayXd& potential) {
  require_odd(grid);
  if (potential.size() != grid.size()) throw InvalidArgument("potential does not match the grid");
  const Eigen::Index n = grid.size();
  Eigen::ArrayXcd rotated(n * n);
  for (Eigen::Index j = 0; j < n; ++j) rotated.segment(j * n, n) = potential.cast<Complex>();
  return two_particle_rotate(Field({grid, grid}, std::move(rotated)), RotationDirection::inverse);
}

TwoParticleFlow::TwoParticleFlow(const Grid1D& grid, Eigen::ArrayXd potential, int steps_per_unit_time)
    : grid_(grid),
      rotated_flow_({PropagatorSpec::free(grid, 2.0),
                     PropagatorSpec::with_potential(grid, rotated_potential(grid, potential), 2.0,
                                                    steps_per_unit_time)}) {}

Field TwoParticleFlow::to_rotated_frame(const Field& u) const {
  require_odd_square(u);
  if (u.grid(0) != grid_) throw InvalidArgument("field does not live on the flow's grid");
  const Eigen::Index n = grid_.size();
  const Eigen::Index m = (n - 1) / 2;

  // u shifted by half a cell along both axes: u(x + h/2, y + h/2).
  Eigen::ArrayXcd shifted = u.values();
  const Eigen::ArrayXd k = fft::wavenumbers(grid_);
  Eigen::ArrayXcd half_cell(n);
  for (Eigen::Index j = 0; j < n; ++j) half_cell[j] = std::polar(1.0 / n, 0.5 * grid_.spacing() * k[j]);
  for (int axis = 0; axis < 2; ++axis) {
    fft::transform_axis(shifted, u.shape(), axis, fft::Direction::forward);
    fft::scale_axis(shifted, u.shape(), axis, half_cell);
    fft::transform_axis(shifted, u.shape(), axis, fft::Direction::backward);
  }

  Eigen::ArrayXcd out(n * n);
  for (Eigen::Index jr = 0; jr < n; ++jr) {
    for (Eigen::Index kr = 0; kr < n; ++kr) {
      const Eigen::Index s = jr - m;
      const Eigen::Index t = kr - m;
      const bool on_lattice = ((s + t) & 1) == 0;
      const Eigen::Index a = on_lattice ? (s + t) / 2 : (s + t - 1) / 2;
      const Eigen::Index b = on_lattice ? (s - t) / 2 : (s - t - 1) / 2;
      const Eigen::Index src = (a + m) * n + (b + m);
      out[jr * n + kr] = on_lattice ? u.values()[src] : shifted[src];
    }
  }
  return Field({grid_, grid_}, std::move(out), {"x'", "y'"});
}

Field TwoParticleFlow::from_rotated_frame(const Field& v) const {
  require_odd_square(v);
  if (v.grid(0) != grid_) throw InvalidArgument("field does not live on the flow's grid");
  const Eigen::Index n = grid_.size();
  const Eigen::Index m = (n - 1) / 2;
  Eigen::ArrayXcd out(n * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const Eigen::Index s = j - m;
      const Eigen::Index t = k - m;
      const bool inside = std::abs(s) + std::abs(t) <= m;
      out[j * n + k] = inside ? v.values()[(s + t + m) * n + (s - t + m)] : Complex(0.0, 0.0);
    }
  }
  return Field({grid_, grid_}, std::move(out));
}

Field TwoParticleFlow::operator()(const Field& u, double t) const {
  return from_rotated_frame(propagate_rotated(to_rotated_frame(u), t));
}

Field pair_splitstep_propagate(const Grid1D& grid, const Eigen::ArrayXd& potential, const Field& u0, double t,
                               int steps_per_unit_time) {
  require_odd_square(u0);
  if (u0.grid(0) != grid) throw InvalidArgument("field does not live on the given grid");
  if (t < 0.0) throw InvalidArgument("two-particle propagation needs t >= 0");
  if (steps_per_unit_time < 1) throw InvalidArgument("steps per unit time must be positive");
  if (t == 0.0) return u0;
  const Eigen::ArrayXcd v = pair_potential(grid, potential).values();
  const auto steps = std::max(1L, static_cast<long>(std::ceil(t * steps_per_unit_time - 1e-9)));
  const double dt = t / static_cast<double>(steps);

  const Eigen::Index n = grid.size();
  const Eigen::ArrayXd k2 = fft::wavenumbers(grid).square();
  Eigen::ArrayXcd kinetic(n * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index l = 0; l < n; ++l) {
      kinetic[j * n + l] = std::polar(1.0 / static_cast<double>(n * n), -dt * (k2[j] + k2[l]));
    }
  }
  Eigen::ArrayXcd half(n * n);
  Eigen::ArrayXcd full(n * n);
  for (Eigen::Index i = 0; i < n * n; ++i) {
    half[i] = std::polar(1.0, -0.5 * dt * v[i].real());
    full[i] = std::polar(1.0, -dt * v[i].real());
  }
  const Shape shape = u0.shape();
  Eigen::ArrayXcd u = u0.values() * half;
  for (long s = 0; s < steps; ++s) {
    fft::transform_axis(u, shape, 0, fft::Direction::forward);
    fft::transform_axis(u, shape, 1, fft::Direction::forward);
    u *= kinetic;
    fft::transform_axis(u, shape, 0, fft::Direction::backward);
    fft::transform_axis(u, shape, 1, fft::Direction::backward);
    u *= s + 1 < steps ? full : half;
  }
  return u0.with_values(std::move(u));
}

Field two_particle_propagate(const Grid1D& grid, const Eigen::ArrayXd& potential, const Field& u0, double t,
                             int steps_per_unit_time) {
  if (t < 0.0) throw InvalidArgument("two-particle propagation needs t >= 0");
  return TwoParticleFlow(grid, potential, steps_per_unit_time)(u0, t);
}

}  // namespace dispersia
