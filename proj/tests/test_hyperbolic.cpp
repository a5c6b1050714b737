#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dispersia/errors.hpp"
#include "dispersia/euclidean.hpp"
#include "dispersia/hyperbolic.hpp"

using namespace dispersia;

namespace {

constexpr double kPi = std::numbers::pi;

SphericalProfile bump(const Grid1D& g, double s, double momentum = 0.0) {
  return SphericalProfile(sample_field({g}, [&](std::span<const double> r) {
    return std::polar(std::exp(-r[0] * r[0] / (2 * s * s)), momentum * r[0]);
  }));
}

double l2(const SphericalProfile& f) { return lp_norm(f.field(), Exponent(2)); }

}  // namespace

TEST_CASE("spherical transform matches the naive quadrature") {
  const Grid1D g = make_grid(64, 12.0, GridKind::hyperbolic_radial);
  const SphericalProfile f = bump(g, 1.0, 0.7);
  const SphericalSpectrum spec = spherical_transform(f);
  const double h = g.spacing();
  for (int k = 0; k < 64; ++k) {
    const double lambda = (k + 1) * kPi / 12.0;
    CHECK(spec.lambda[k] == doctest::Approx(lambda));
    Complex sum(0.0, 0.0);
    for (int j = 0; j < 64; ++j) {
      const double r = g.node(j);
      sum += h * std::sinh(r) * f.values()[j] * std::sin(lambda * r);
    }
    CHECK(std::abs(spec.coefficients[k] - 4 * kPi / lambda * sum) < 1e-12 * std::max(1.0, std::abs(sum)));
  }
}

TEST_CASE("round trip and Plancherel") {
  const Grid1D g = make_grid(2048, 60.0, GridKind::hyperbolic_radial);
  const SphericalProfile f = bump(g, 1.2, 1.3);
  const SphericalSpectrum spec = spherical_transform(f);
  const SphericalProfile back = inverse_spherical_transform(spec);
  const double scale = f.values().abs().maxCoeff();
  CHECK((back.values() - f.values()).abs().maxCoeff() < 1e-10 * scale);

  const double energy = (spec.coefficients.abs2() * spec.plancherel_weights()).sum();
  const double norm2 = l2(f) * l2(f);
  CHECK(std::abs(energy - norm2) < 1e-8 * norm2);

  CHECK(spherical_dual_lattice(g)[2] == doctest::Approx(3 * kPi / 60.0));
  CHECK(f.dual_spacing() == doctest::Approx(kPi / 60.0));
}

TEST_CASE("small bumps see the Euclidean radial Fourier transform") {
  const double s = 0.1;
  const Grid1D g = make_grid(4096, 20.0, GridKind::hyperbolic_radial);
  const SphericalSpectrum spec = spherical_transform(bump(g, s));
  const double peak = std::pow(2 * kPi, 1.5) * s * s * s;
  double worst = 0.0;
  for (Eigen::Index k = 0; k < spec.lambda.size(); ++k) {
    const double l = spec.lambda[k];
    const double euclid = peak * std::exp(-l * l * s * s / 2);
    worst = std::max(worst, std::abs(spec.coefficients[k].real() - euclid));
  }
  CHECK(worst < 0.02 * peak);
}

TEST_CASE("radial flow: unitary, a group, diagonal in the dual lattice") {
  const Grid1D g = make_grid(512, 40.0, GridKind::hyperbolic_radial);
  const SphericalProfile f = bump(g, 1.0);
  const SphericalProfile a = h3_propagate(h3_propagate(f, 0.4), 1.1);
  const SphericalProfile b = h3_propagate(f, 1.5);
  CHECK((a.values() - b.values()).abs().maxCoeff() < 1e-12);
  CHECK(l2(b) == doctest::Approx(l2(f)).epsilon(1e-12));
  CHECK((h3_propagate(b, -1.5).values() - f.values()).abs().maxCoeff() < 1e-12);

  SphericalSpectrum spec = spherical_transform(f);
  for (Eigen::Index k = 0; k < spec.lambda.size(); ++k) {
    spec.coefficients[k] *= std::polar(1.0, -1.5 * (spec.lambda[k] * spec.lambda[k] + kH3RhoSquared));
  }
  CHECK((inverse_spherical_transform(spec).values() - b.values()).abs().maxCoeff() < 1e-12);
}

TEST_CASE("bi-radial flow acts factor by factor") {
  const Grid1D g = make_grid(128, 20.0, GridKind::hyperbolic_radial);
  const Grid1D g2 = make_grid(96, 15.0, GridKind::hyperbolic_radial);
  const SphericalProfile f = bump(g, 1.0, 0.5);
  const SphericalProfile k = bump(g2, 0.8);
  const Field fk = tensor_product(f.field(), k.field());
  const Field evolved = h3_product_propagate(fk, 2.0);
  const Field expected = tensor_product(h3_propagate(f, 2.0).field(), h3_propagate(k, 2.0).field());
  CHECK((evolved.values() - expected.values()).abs().maxCoeff() < 1e-12);

  const ProductPropagator p({PropagatorSpec::hyperbolic(g), PropagatorSpec::hyperbolic(g2)});
  CHECK((p(fk, 2.0).values() - expected.values()).abs().maxCoeff() < 1e-12);
  CHECK(p.claimed_decay_exponent() == Rational(3));
}

TEST_CASE("spherical profiles reject non-radial data") {
  const Grid1D torus = make_grid(32, 10.0, GridKind::euclidean_torus);
  CHECK_THROWS_AS(SphericalProfile(Field({torus}, Eigen::ArrayXcd::Zero(32))), InvalidArgument);
  const Grid1D g = make_grid(32, 10.0, GridKind::hyperbolic_radial);
  CHECK_THROWS_AS(SphericalProfile(Field({g, g}, Eigen::ArrayXcd::Zero(32 * 32))), InvalidArgument);
}
