#include "dispersia/decay.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>

#include "dispersia/errors.hpp"
#include "dispersia/fft.hpp"

namespace dispersia {

namespace {

/// Sum of |u|^2 * weight over all axes except `axis`.
Eigen::ArrayXd marginal_mass(const Eigen::ArrayXcd& values, const Field& u, int axis) {
  const Eigen::ArrayXd density = values.abs2() * u.quadrature_weights();
  const Eigen::Index n = u.shape()[static_cast<std::size_t>(axis)];
  const Eigen::Index stride = axis_stride(u.shape(), axis);
  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(n);
  for (Eigen::Index flat = 0; flat < density.size(); ++flat) out[(flat / stride) % n] += density[flat];
  return out;
}

}  // namespace

WrapMonitor::WrapMonitor(const Field& initial) : grids_(initial.grids()) {
  for (int a = 0; a < initial.rank(); ++a) {
    const auto& g = initial.grid(a);
    if (g.is_radial()) {
      centers_.push_back(0.0);
      continue;
    }
    const Eigen::ArrayXd mass = marginal_mass(initial.values(), initial, a);
    const Eigen::ArrayXd theta = g.nodes() * (2.0 * std::numbers::pi / g.length());
    const double s = (mass * theta.sin()).sum();
    const double c = (mass * theta.cos()).sum();
    double center = std::atan2(s, c) * g.length() / (2.0 * std::numbers::pi);
    if (center < 0.0) center += g.length();
    centers_.push_back(center);
  }
}

double WrapMonitor::boundary_fraction(const Field& u) const {
  if (u.grids() != grids_) throw InvalidArgument("wrap monitor applied to a field on different grids");
  double worst = 0.0;
  for (int a = 0; a < u.rank(); ++a) {
    const auto& g = u.grid(a);
    const Eigen::ArrayXd mass = marginal_mass(u.values(), u, a);
    const double total = mass.sum();
    if (total == 0.0) continue;
    double band = 0.0;
    for (Eigen::Index j = 0; j < g.size(); ++j) {
      const bool in_band = g.is_radial()
                               ? g.node(j) >= (1.0 - kBandFraction) * g.length()
                               : std::abs(periodic_offset(g, g.node(j), centers_[static_cast<std::size_t>(a)])) >=
                                     (0.5 - kBandFraction) * g.length();
      if (in_band) band += mass[j];
    }
    worst = std::max(worst, band / total);
  }
  return worst;
}

double spectral_radius(const Field& u, int axis, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw InvalidArgument("spectral fraction must lie in (0, 1]");
  const auto& g = u.grid(axis);
  Eigen::ArrayXcd spectrum = u.values();
  Eigen::ArrayXd k;
  if (g.is_radial()) {
    Eigen::ArrayXd s = g.nodes().sinh();
    fft::scale_axis(spectrum, u.shape(), axis, s);
    fft::dst2_axis(spectrum, u.shape(), axis);
    k = Eigen::ArrayXd::LinSpaced(g.size(), 1.0, g.size()) * (std::numbers::pi / g.length());
  } else {
    fft::transform_axis(spectrum, u.shape(), axis, fft::Direction::forward);
    k = fft::wavenumbers(g).abs();
  }
  const Eigen::Index n = g.size();
  const Eigen::Index stride = axis_stride(u.shape(), axis);
  Eigen::ArrayXd power = Eigen::ArrayXd::Zero(n);
  for (Eigen::Index flat = 0; flat < spectrum.size(); ++flat) power[(flat / stride) % n] += std::norm(spectrum[flat]);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) order[static_cast<std::size_t>(j)] = j;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return k[a] < k[b]; });
  const double total = power.sum();
  if (total == 0.0) return 0.0;
  double acc = 0.0;
  for (auto j : order) {
    acc += power[j];
    if (acc >= fraction * total) return k[j];
  }
  return k[order.back()];
}

double required_length(const Field& u, int axis, double laplacian_coefficient, double t_max) {
  return 4.0 * laplacian_coefficient * spectral_radius(u, axis) * t_max;
}

Series norm_series(const Evolution& evolve, const Field& u0, std::span<const double> times, const Exponent& r,
                   TimeStepping stepping) {
  Series out;
  out.reserve(times.size());
  const WrapMonitor monitor(u0);
  double previous_t = 0.0;
  Field current = u0;
  for (const double t : times) {
    if (!(t > previous_t) && !out.empty()) throw InvalidArgument("series times must be strictly increasing");
    if (!(t > 0.0)) throw InvalidArgument("series times must be positive");
    current = stepping == TimeStepping::marching ? evolve(current, t - previous_t) : evolve(u0, t);
    out.push_back({t, lp_norm(current, r), monitor.flagged(current)});
    previous_t = t;
  }
  return out;
}

DecayFit fit_decay_exponent(const Series& series, FitWindow window) {
  if (!(window.t_min < window.t_max)) throw InvalidArgument("fit window needs t_min < t_max");
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& p : series) {
    if (p.flagged || p.t < window.t_min || p.t > window.t_max) continue;
    if (!(p.value > 0.0) || !(p.t > 0.0)) {
      throw NonpositiveValue("log-log fit needs positive samples (t = " + std::to_string(p.t) + ")");
    }
    xs.push_back(std::log(p.t));
    ys.push_back(std::log(p.value));
  }
  const auto n = static_cast<int>(xs.size());
  if (n < 5) throw InsufficientSamples("log-log fit needs at least 5 unflagged samples, got " + std::to_string(n));

  const Eigen::Map<const Eigen::ArrayXd> x(xs.data(), n);
  const Eigen::Map<const Eigen::ArrayXd> y(ys.data(), n);
  const double mx = x.mean();
  const double my = y.mean();
  const double sxx = (x - mx).square().sum();
  const double sxy = ((x - mx) * (y - my)).sum();
  if (sxx == 0.0) throw InsufficientSamples("log-log fit needs distinct sample times");

  DecayFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  const double ssr = (y - fit.intercept - fit.slope * x).square().sum();
  fit.std_error = n > 2 ? std::sqrt(ssr / (n - 2) / sxx) : 0.0;
  fit.window = window;
  fit.n_samples = n;
  return fit;
}

RegimeFit regime_decay_fit(const Series& series, double split_time) {
  Series small;
  Series large;
  for (const auto& p : series) (p.t < split_time ? small : large).push_back(p);
  auto fit_all = [](const Series& s, const char* name) {
    if (s.size() < 5) throw InsufficientSamples(std::string(name) + " regime needs at least 5 samples");
    const auto [lo, hi] = std::minmax_element(s.begin(), s.end(), [](auto& a, auto& b) { return a.t < b.t; });
    return fit_decay_exponent(s, {lo->t, hi->t});
  };
  return {fit_all(small, "small-time"), fit_all(large, "large-time")};
}

Verdict compare_prediction(const DecayFit& fit, const Rational& predicted, double tol) {
  const bool pass = std::abs(fit.slope + to_double(predicted)) <= tol;
  return {pass, fit.slope, fit.std_error, predicted, tol, fit.window, fit.n_samples};
}

nlohmann::json to_json(const Verdict& v) {
  return {{"slope", v.slope},
          {"stderr", v.std_error},
          {"predicted", to_string(v.predicted)},
          {"predicted_slope", -to_double(v.predicted)},
          {"tolerance", v.tolerance},
          {"n_samples", v.n_samples},
          {"verdict", v.pass ? "pass" : "fail"},
          {"window", {v.window.t_min, v.window.t_max}}};
}

nlohmann::json to_json(const DecayFit& fit) {
  nlohmann::json j{{"slope", fit.slope},
                   {"intercept", fit.intercept},
                   {"stderr", fit.std_error},
                   {"n_samples", fit.n_samples},
                   {"window", {fit.window.t_min, fit.window.t_max}}};
  if (fit.predicted) j["predicted"] = to_string(*fit.predicted);
  if (fit.verdict) j["verdict"] = *fit.verdict ? "pass" : "fail";
  return j;
}

void write_series_csv(std::ostream& os, const Series& series) {
  os << "t,value,flagged\n";
  os << std::setprecision(17);
  for (const auto& p : series) os << p.t << ',' << p.value << ',' << (p.flagged ? 1 : 0) << '\n';
}

double strichartz_norm(const Trajectory& trajectory, const Exponent& p, const Exponent& q) {
  if (trajectory.empty()) throw InvalidArgument("strichartz_norm of an empty trajectory");
  std::vector<double> norms;
  norms.reserve(trajectory.size());
  for (const auto& s : trajectory) norms.push_back(lp_norm(s.u, q));
  if (p.is_infinite()) return *std::max_element(norms.begin(), norms.end());
  const double pp = p.to_double();
  double integral = 0.0;
  for (std::size_t i = 1; i < trajectory.size(); ++i) {
    const double dt = trajectory[i].t - trajectory[i - 1].t;
    if (!(dt > 0.0)) throw InvalidArgument("trajectory times must be strictly increasing");
    integral += 0.5 * dt * (std::pow(norms[i - 1], pp) + std::pow(norms[i], pp));
  }
  return std::pow(integral, 1.0 / pp);
}

}  // namespace dispersia
