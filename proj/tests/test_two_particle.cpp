#include <doctest.h>

#include <cmath>
#include <random>

#include <fftw3.h>

#include "dispersia/errors.hpp"
#include "dispersia/potential.hpp"
#include "dispersia/two_particle.hpp"

using namespace dispersia;

namespace {

Complex at2(const Field& u, Eigen::Index a, Eigen::Index b) {
  const Eigen::Index idx[]{a, b};
  return u.at(idx);
}

Field random_square(const Grid1D& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> d;
  return sample_field({g, g}, [&](std::span<const double>) { return Complex(d(rng), d(rng)); });
}

Field centred_gaussian(const Grid1D& g, double sigma) {
  const double c = g.node(g.size() / 2);
  return sample_field({g, g}, [&](std::span<const double> x) {
    const double a = x[0] - c;
    const double b = x[1] - c;
    return Complex(std::exp(-(a * a + b * b) / (2 * sigma * sigma)), 0.0);
  });
}

double l2_diff(const Field& a, const Field& b) { return lp_norm(difference(a, b), Exponent(2)); }

// Strang splitting for iu_t = (-Delta + V(x - y)) u in the original coordinates, own FFTW plans.
Field original_frame_oracle(const Grid1D& g, const PotentialSpec& pot, const Field& u0, double t, int steps) {
  const int n = g.size();
  const double dt = t / steps;
  const double two_pi = 2.0 * std::acos(-1.0);
  Eigen::ArrayXcd u = u0.values();
  auto* ptr = reinterpret_cast<fftw_complex*>(u.data());
  fftw_plan fwd = fftw_plan_dft_2d(n, n, ptr, ptr, FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_plan bwd = fftw_plan_dft_2d(n, n, ptr, ptr, FFTW_BACKWARD, FFTW_ESTIMATE);
  Eigen::ArrayXd v(n * n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      double d = g.node(j) - g.node(k);
      d -= g.length() * std::round(d / g.length());
      v[j * n + k] = pot.profile(d);
    }
  }
  auto potential_step = [&](double tau) {
    for (int i = 0; i < n * n; ++i) u[i] *= std::polar(1.0, -tau * v[i]);
  };
  for (int s = 0; s < steps; ++s) {
    potential_step(0.5 * dt);
    fftw_execute(fwd);
    for (int j = 0; j < n; ++j) {
      const double kj = two_pi * (j <= n / 2 ? j : j - n) / g.length();
      for (int k = 0; k < n; ++k) {
        const double kk = two_pi * (k <= n / 2 ? k : k - n) / g.length();
        u[j * n + k] *= std::polar(1.0 / (n * n), -dt * (kj * kj + kk * kk));
      }
    }
    fftw_execute(bwd);
    potential_step(0.5 * dt);
  }
  fftw_destroy_plan(fwd);
  fftw_destroy_plan(bwd);
  return u0.with_values(std::move(u));
}

}  // namespace

TEST_CASE("lattice rotation is an exact bijection") {
  const Grid1D g = make_grid(9, 9.0, GridKind::euclidean_torus);
  const Field u = random_square(g, 1);
  const Field v = two_particle_rotate(u, RotationDirection::forward);
  for (int j = 0; j < 9; ++j) {
    for (int k = 0; k < 9; ++k) CHECK(at2(v, (j + k) % 9, ((j - k) % 9 + 9) % 9) == at2(u, j, k));
  }
  CHECK(two_particle_rotate(v, RotationDirection::inverse).values().isApprox(u.values(), 0.0));
  CHECK(lp_norm(v, Exponent(2)) == doctest::Approx(lp_norm(u, Exponent(2))));

  const Grid1D even = make_grid(10, 10.0, GridKind::euclidean_torus);
  CHECK_THROWS_AS(two_particle_rotate(random_square(even, 2), RotationDirection::forward), InvalidArgument);
}

TEST_CASE("pair potential samples V(x - y)") {
  const Grid1D g = make_grid(11, 11.0, GridKind::euclidean_torus);
  Eigen::ArrayXd v(11);
  for (int m = 0; m < 11; ++m) v[m] = m + 1.0;
  const Field w = pair_potential(g, v);
  for (int j = 0; j < 11; ++j) {
    for (int k = 0; k < 11; ++k) CHECK(at2(w, j, k).real() == v[((j - k) % 11 + 11) % 11]);
  }
}

TEST_CASE("rotated frame round trip inside the central diamond") {
  const Grid1D g = make_grid(81, 40.0, GridKind::euclidean_torus);
  const TwoParticleFlow flow(g, Eigen::ArrayXd::Zero(81));
  const Field u = centred_gaussian(g, 1.5);
  const Field v = flow.to_rotated_frame(u);
  CHECK(v.axis_names() == std::vector<std::string>{"x'", "y'"});
  CHECK(l2_diff(flow.from_rotated_frame(v), u) < 1e-14);
  // Rotated-node values are u at ((x' + y') / 2, (x' - y') / 2).
  const int m = 40;
  const double h = g.spacing();
  for (int s = -5; s <= 5; ++s) {
    for (int t = -5; t <= 5; ++t) {
      const double x = 0.5 * (s + t) * h;
      const double y = 0.5 * (s - t) * h;
      CHECK(std::abs(at2(v, s + m, t + m) - std::exp(-(x * x + y * y) / (2 * 1.5 * 1.5))) < 1e-12);
    }
  }
}

TEST_CASE("free two-particle flow equals the 2-D free flow") {
  // Mass beyond the central diamond is ~exp(-d^2 / 20) with d = L / (2 sqrt 2).
  const Grid1D g = make_grid(243, 80.0, GridKind::euclidean_torus);
  const Field u = centred_gaussian(g, 1.0);
  const Eigen::ArrayXd zero = Eigen::ArrayXd::Zero(243);
  const PotentialSpec none = PotentialSpec::gaussian(0.0, 1.0);
  CHECK(l2_diff(two_particle_propagate(g, zero, u, 1.5, 16), original_frame_oracle(g, none, u, 1.5, 1)) < 1e-11);
}

TEST_CASE("rotated solve agrees with the original-coordinate split-step at matched steps") {
  const Grid1D g = make_grid(121, 48.0, GridKind::euclidean_torus);
  const PotentialSpec pot = PotentialSpec::sech_squared(1.0, 1.5, 0.0);
  const auto v = sample_potential(pot, g);
  const Field u = centred_gaussian(g, 1.0);
  const Field rotated = two_particle_propagate(g, v, u, 0.5, 32);
  CHECK(l2_diff(rotated, original_frame_oracle(g, pot, u, 0.5, 16)) < 1e-6);
  CHECK(l2_diff(rotated, pair_splitstep_propagate(g, v, u, 0.5, 32)) < 1e-6);
  CHECK(lp_norm(rotated, Exponent(2)) == doctest::Approx(lp_norm(u, Exponent(2))).epsilon(1e-10));
}
