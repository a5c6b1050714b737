#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "dispersia/decay.hpp"
#include "dispersia/errors.hpp"
#include "dispersia/euclidean.hpp"

using namespace dispersia;

namespace {

Series power_law(double sigma, double c, double t0, double t1, int n) {
  Series s;
  for (int i = 0; i < n; ++i) {
    const double t = t0 * std::pow(t1 / t0, double(i) / (n - 1));
    s.push_back({t, c * std::pow(t, -sigma), false});
  }
  return s;
}

Field gaussian(const std::vector<Grid1D>& grids, double sigma, double center_fraction = 0.5) {
  return sample_field(grids, [&](std::span<const double> x) {
    double r2 = 0.0;
    for (std::size_t a = 0; a < x.size(); ++a) {
      const double c = grids[a].is_radial() ? 0.0 : center_fraction * grids[a].length();
      const double d = grids[a].is_radial() ? x[a] : periodic_offset(grids[a], x[a], c);
      r2 += d * d;
    }
    return Complex(std::exp(-r2 / (2 * sigma * sigma)), 0.0);
  });
}

}  // namespace

TEST_CASE("log-log fit recovers exact power laws") {
  const DecayFit fit = fit_decay_exponent(power_law(0.75, 3.0, 1.0, 100.0, 20), {1.0, 100.0});
  CHECK(fit.slope == doctest::Approx(-0.75).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(fit.std_error < 1e-12);
  CHECK(fit.n_samples == 20);
}

TEST_CASE("log-log fit with noise stays within a few standard errors") {
  std::mt19937 rng(42);
  std::normal_distribution<double> noise(0.0, 0.02);
  Series s = power_law(1.5, 1.0, 1.0, 50.0, 60);
  for (auto& p : s) p.value *= std::exp(noise(rng));
  const DecayFit fit = fit_decay_exponent(s, {1.0, 50.0});
  CHECK(std::abs(fit.slope + 1.5) < 4 * fit.std_error);
  CHECK(fit.std_error > 0.0);
}

TEST_CASE("fit window and flags select the samples") {
  Series s = power_law(1.0, 1.0, 1.0, 10.0, 10);
  s[9].value = 1e6;
  s[9].flagged = true;
  const DecayFit fit = fit_decay_exponent(s, {1.0, 10.0});
  CHECK(fit.n_samples == 9);
  CHECK(fit.slope == doctest::Approx(-1.0));
  CHECK(fit_decay_exponent(s, {2.0, 6.0}).n_samples < 9);

  CHECK_THROWS_AS(fit_decay_exponent(power_law(1.0, 1.0, 1.0, 2.0, 4), {1.0, 2.0}), InsufficientSamples);
  Series z = power_law(1.0, 1.0, 1.0, 2.0, 6);
  z[3].value = 0.0;
  CHECK_THROWS_AS(fit_decay_exponent(z, {1.0, 2.0}), NonpositiveValue);
}

TEST_CASE("regime split separates small- and large-time rates") {
  Series s;
  for (int i = 0; i < 40; ++i) {
    const double t = 0.1 * std::pow(100.0, i / 39.0);
    s.push_back({t, t < 1.0 ? std::pow(t, -3.0) : std::pow(t, -1.5), false});
  }
  const RegimeFit r = regime_decay_fit(s);
  CHECK(r.small_time.slope == doctest::Approx(-3.0));
  CHECK(r.large_time.slope == doctest::Approx(-1.5));
}

TEST_CASE("verdicts compare slope against the predicted exponent") {
  const DecayFit fit = fit_decay_exponent(power_law(0.97, 1.0, 1.0, 10.0, 10), {1.0, 10.0});
  CHECK(compare_prediction(fit, Rational(1), 0.05).pass);
  CHECK_FALSE(compare_prediction(fit, Rational(1), 0.02).pass);
  CHECK_FALSE(compare_prediction(fit, Rational(3, 2), 0.05).pass);

  const auto j = to_json(compare_prediction(fit, Rational(1), 0.05));
  CHECK(j["predicted"] == "1");
  CHECK(j["verdict"] == "pass");
  CHECK(j.contains("stderr"));
  CHECK(j.contains("window"));
}

TEST_CASE("series CSV layout") {
  std::ostringstream os;
  write_series_csv(os, {{1.0, 0.5, false}, {2.0, 0.25, true}});
  CHECK(os.str() == "t,value,flagged\n1,0.5,0\n2,0.25,1\n");
}

TEST_CASE("wrap monitor flags mass near the antipode and the radial wall") {
  const Grid1D g = make_grid(256, 100.0, GridKind::euclidean_torus);
  const Field centred = gaussian({g}, 2.0);
  const WrapMonitor monitor(centred);
  CHECK(monitor.centers()[0] == doctest::Approx(50.0).epsilon(1e-6));
  CHECK_FALSE(monitor.flagged(centred));
  CHECK(monitor.flagged(gaussian({g}, 2.0, 0.0)));

  const Grid1D r = make_grid(256, 50.0, GridKind::hyperbolic_radial);
  const Field inner = gaussian({r}, 1.0);
  const WrapMonitor radial(inner);
  CHECK_FALSE(radial.flagged(inner));
  const Field outer = sample_field({r}, [](std::span<const double> x) {
    return Complex(std::exp(-(x[0] - 49.0) * (x[0] - 49.0)) / std::sinh(x[0]), 0.0);
  });
  CHECK(radial.flagged(outer));
}

TEST_CASE("spectral radius and domain budget of a Gaussian") {
  const Grid1D g = make_grid(1024, 200.0, GridKind::euclidean_torus);
  const double s = 2.0;
  const Field u = gaussian({g, g}, s);
  // |u^(k)|^2 ~ exp(-s^2 k^2): the 99.99% radius is erfinv(0.9999) / s.
  const double xi = 2.7510639057120607 / s;
  CHECK(spectral_radius(u, 0) == doctest::Approx(xi).epsilon(0.01));
  CHECK(spectral_radius(u, 1) == doctest::Approx(xi).epsilon(0.01));
  CHECK(required_length(u, 0, 2.0, 10.0) == doctest::Approx(4 * 2.0 * spectral_radius(u, 0) * 10.0));
}

TEST_CASE("marching and direct norm series agree for a time-additive flow") {
  const Grid1D g = make_grid(512, 200.0, GridKind::euclidean_torus);
  const Field u = gaussian({g}, 1.0);
  const ProductPropagator flow({PropagatorSpec::free(g)});
  const std::vector<double> times{0.5, 1.0, 2.0, 4.0};
  const Series a = norm_series(flow, u, times, Exponent(4), TimeStepping::direct);
  const Series b = norm_series(flow, u, times, Exponent(4), TimeStepping::marching);
  for (std::size_t i = 0; i < times.size(); ++i) CHECK(a[i].value == doctest::Approx(b[i].value).epsilon(1e-12));
  const std::vector<double> bad{1.0, 1.0};
  CHECK_THROWS_AS(norm_series(flow, u, bad, Exponent(2)), InvalidArgument);
}

TEST_CASE("Strichartz norm of a stationary trajectory") {
  const Grid1D g = make_grid(64, 10.0, GridKind::euclidean_torus);
  const Field u = gaussian({g}, 1.0);
  Trajectory traj;
  for (int i = 0; i <= 10; ++i) traj.push_back({0.3 * i, u});
  const double q4 = lp_norm(u, Exponent(4));
  CHECK(strichartz_norm(traj, Exponent(2), Exponent(4)) == doctest::Approx(std::sqrt(3.0) * q4));
  CHECK(strichartz_norm(traj, Exponent::infinity(), Exponent(4)) == doctest::Approx(q4));
}
