#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dispersia/errors.hpp"
#include "dispersia/exponent.hpp"
#include "dispersia/fft.hpp"
#include "dispersia/field.hpp"
#include "dispersia/grid.hpp"
#include "dispersia/potential.hpp"

using namespace dispersia;

namespace {

Complex at2(const Field& u, Eigen::Index a, Eigen::Index b) {
  const Eigen::Index idx[]{a, b};
  return u.at(idx);
}

Field random_field(std::vector<Grid1D> grids, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> d;
  return sample_field(std::move(grids), [&](std::span<const double>) { return Complex(d(rng), d(rng)); });
}

Field gaussian_1d(const Grid1D& g, double sigma) {
  const double c = g.node(g.size() / 2);
  return sample_field({g}, [&](std::span<const double> x) {
    const double d = x[0] - c;
    return Complex(std::exp(-d * d / (2 * sigma * sigma)), 0.0);
  });
}

}  // namespace

TEST_CASE("rationals and exponents parse exactly") {
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("-4/3") == Rational(-4, 3));
  CHECK(parse_rational("1.25") == Rational(5, 4));
  CHECK(parse_rational(" 6/8 ") == Rational(3, 4));
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational("abc"), InvalidArgument);

  CHECK(parse_exponent("inf").is_infinite());
  CHECK(parse_exponent("∞").is_infinite());
  CHECK(parse_exponent("4/3").value() == Rational(4, 3));
  CHECK_THROWS_AS(parse_exponent("1/2"), InvalidArgument);
  CHECK(Exponent(2) < Exponent::infinity());
  CHECK(Exponent::infinity().reciprocal() == Rational(0));
  CHECK(to_string(Exponent::infinity()) == "inf");
  CHECK(to_string(Exponent(Rational(4, 3))) == "4/3");
}

TEST_CASE("grids: torus and radial nodes, weights and limits") {
  const Grid1D torus = make_grid(16, 8.0, GridKind::euclidean_torus);
  CHECK(torus.node(3) == doctest::Approx(1.5));
  CHECK(torus.measure() == doctest::Approx(8.0));
  CHECK(periodic_offset(torus, 7.5, 0.5) == doctest::Approx(-1.0));

  const Grid1D radial = make_grid(100, 10.0, GridKind::hyperbolic_radial);
  CHECK(radial.node(0) == doctest::Approx(0.05));
  const double r = radial.node(7);
  CHECK(radial.weight(7) == doctest::Approx(4 * std::numbers::pi * std::sinh(r) * std::sinh(r) * 0.1));

  CHECK_THROWS_AS(make_grid(4, 1.0, GridKind::euclidean_torus), InvalidArgument);
  CHECK_THROWS_AS(make_grid(64, 400.0, GridKind::hyperbolic_radial), InvalidArgument);
  CHECK_THROWS_AS(make_grid(64, -1.0, GridKind::euclidean_torus), InvalidArgument);
}

TEST_CASE("fields validate shape, names and values") {
  const Grid1D g = make_grid(8, 1.0, GridKind::euclidean_torus);
  CHECK_THROWS_AS(Field({g}, Eigen::ArrayXcd::Zero(7)), InvalidArgument);
  CHECK_THROWS_AS(Field({g, g}, Eigen::ArrayXcd::Zero(64), {"x", "x"}), InvalidArgument);
  Eigen::ArrayXcd bad = Eigen::ArrayXcd::Zero(8);
  bad[2] = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(Field({g}, bad), InvalidArgument);

  const Field u = random_field({g, g}, 1);
  CHECK(u.rank() == 2);
  CHECK(u.axis_index("y") == 1);
  CHECK(at2(u, 2, 5) == u.values()[2 * 8 + 5]);
}

TEST_CASE("Lp norms match closed forms") {
  const Grid1D g = make_grid(2048, 80.0, GridKind::euclidean_torus);
  const double s = 1.3;
  const Field u = gaussian_1d(g, s);
  // ||e^{-x^2/(2 s^2)}||_p = (s sqrt(2 pi / p))^{1/p}
  for (int p : {1, 2, 3, 4}) {
    const double exact = std::pow(s * std::sqrt(2 * std::numbers::pi / p), 1.0 / p);
    CHECK(lp_norm(u, Exponent(p)) == doctest::Approx(exact).epsilon(1e-12));
  }
  CHECK(lp_norm(u, Exponent::infinity()) == doctest::Approx(1.0));

  // Scaling by the maximum keeps huge values finite.
  const Field big = u.with_values(u.values() * 1e200);
  CHECK(lp_norm(big, Exponent(2)) == doctest::Approx(1e200 * lp_norm(u, Exponent(2))).epsilon(1e-12));
}

TEST_CASE("norm properties: homogeneity and Minkowski") {
  const Grid1D g = make_grid(32, 5.0, GridKind::euclidean_torus);
  for (unsigned seed = 0; seed < 10; ++seed) {
    const Field u = random_field({g, g}, seed);
    const Field v = random_field({g, g}, seed + 100);
    for (const Exponent& p : {Exponent(1), Exponent(Rational(3, 2)), Exponent(4), Exponent::infinity()}) {
      CHECK(lp_norm(u.with_values(u.values() * Complex(-2.5, 1.0)), p) ==
            doctest::Approx(std::abs(Complex(-2.5, 1.0)) * lp_norm(u, p)));
      CHECK(lp_norm(u.with_values(u.values() + v.values()), p) <= lp_norm(u, p) + lp_norm(v, p) + 1e-12);
    }
  }
}

TEST_CASE("tensor products factor the norms") {
  const Grid1D g = make_grid(64, 10.0, GridKind::euclidean_torus);
  const Grid1D r = make_grid(64, 6.0, GridKind::hyperbolic_radial);
  const Field f = random_field({g}, 3);
  const Field h = random_field({r}, 4);
  const Field fh = tensor_product(f, h);
  CHECK(fh.shape() == Shape{64, 64});
  CHECK(fh.axis_names() == std::vector<std::string>{"x", "y"});
  for (const Exponent& p : {Exponent(1), Exponent(2), Exponent(5), Exponent::infinity()}) {
    CHECK(lp_norm(fh, p) == doctest::Approx(lp_norm(f, p) * lp_norm(h, p)).epsilon(1e-12));
  }
}

TEST_CASE("mixed norms reduce to Lp when both exponents agree") {
  const Grid1D g = make_grid(16, 3.0, GridKind::euclidean_torus);
  const Field u = random_field({g, g}, 7);
  const MixedNormSpec same{{{"x", Exponent(3)}, {"y", Exponent(3)}}};
  CHECK(mixed_norm(u, same) == doctest::Approx(lp_norm(u, Exponent(3))));

  // Brute-force L^inf_y L^1_x.
  const MixedNormSpec mixed{{{"x", Exponent(1)}, {"y", Exponent::infinity()}}};
  double expected = 0.0;
  for (int k = 0; k < 16; ++k) {
    double inner = 0.0;
    for (int j = 0; j < 16; ++j) inner += std::abs(at2(u, j, k)) * g.spacing();
    expected = std::max(expected, inner);
  }
  CHECK(mixed_norm(u, mixed) == doctest::Approx(expected));
}

TEST_CASE("fft helpers agree with naive sums") {
  const Grid1D g = make_grid(12, 4.0, GridKind::euclidean_torus);
  const Field u = random_field({g, g}, 11);
  const Shape shape = u.shape();

  Eigen::ArrayXcd a = u.values();
  fft::transform_axis(a, shape, 1, fft::Direction::forward);
  for (int j = 0; j < 12; ++j) {
    for (int k = 0; k < 12; ++k) {
      Complex s(0.0, 0.0);
      for (int l = 0; l < 12; ++l) s += at2(u, j, l) * std::polar(1.0, -2 * std::numbers::pi * k * l / 12.0);
      CHECK(std::abs(a[j * 12 + k] - s) < 1e-12);
    }
  }

  Eigen::ArrayXcd b = u.values();
  fft::dst2_axis(b, shape, 0);
  for (int k = 0; k < 12; ++k) {
    Complex s(0.0, 0.0);
    for (int j = 0; j < 12; ++j) s += 2.0 * at2(u, j, 5) * std::sin(std::numbers::pi * (j + 0.5) * (k + 1) / 12.0);
    CHECK(std::abs(b[k * 12 + 5] - s) < 1e-12);
  }
  fft::dst3_axis(b, shape, 0);
  CHECK(((b / 24.0) - u.values()).abs().maxCoeff() < 1e-12);

  const auto k = fft::wavenumbers(g);
  CHECK(k[1] == doctest::Approx(2 * std::numbers::pi / 4.0));
  CHECK(k[11] == doctest::Approx(-2 * std::numbers::pi / 4.0));
}

TEST_CASE("potentials sample analytically and reject attractive amplitudes") {
  const Grid1D g = make_grid(64, 20.0, GridKind::euclidean_torus);
  const auto v = sample_potential(PotentialSpec::sech_squared(2.0, 1.5, 10.0), g);
  for (int j = 0; j < 64; ++j) {
    const double y = (g.node(j) - 10.0) / 1.5;
    CHECK(v[j] == doctest::Approx(2.0 / (std::cosh(y) * std::cosh(y))));
  }
  // Minimal image: a centre at 0 is seen from both ends of the torus.
  const auto w = sample_potential(PotentialSpec::gaussian(1.0, 1.0, 0.0), g);
  CHECK(w[63] == doctest::Approx(std::exp(-0.5 * g.spacing() * g.spacing())));
  CHECK_THROWS_AS(PotentialSpec::gaussian(-1.0, 1.0).validate(), InvalidArgument);
  CHECK_THROWS_AS(PotentialSpec::sech_squared(1.0, 0.0).validate(), InvalidArgument);
}
