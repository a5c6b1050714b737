#include "dispersia/nls.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dispersia/errors.hpp"

namespace dispersia {

namespace {

constexpr Complex kMinusI{0.0, -1.0};

Eigen::ArrayXcd nonlinearity_values(const Eigen::ArrayXcd& u, const Nonlinearity& nl) {
  const Eigen::ArrayXd modulus = u.abs();
  if (nl.variant == NonlinearityVariant::gauge_invariant) {
    return nl.mu * (modulus.pow(nl.gamma - 1.0).cast<Complex>() * u);
  }
  return nl.mu * modulus.pow(nl.gamma).cast<Complex>();
}

void gauge_substep(Eigen::ArrayXcd& values, const Nonlinearity& nl, double tau) {
  // With s = |u|^{-k}, k = gamma - 1: s' = -k Im(mu) and arg(u)' = -Re(mu) / s.
  const double k = nl.gamma - 1.0;
  const double mr = nl.mu.real();
  const double mi = nl.mu.imag();
  for (Eigen::Index j = 0; j < values.size(); ++j) {
    const double r0 = std::abs(values[j]);
    if (r0 == 0.0) continue;
    const double rk = std::pow(r0, k);
    if (mi == 0.0) {
      values[j] *= std::polar(1.0, -mr * rk * tau);
      continue;
    }
    const double x = -k * mi * tau * rk;
    if (!(x > -1.0)) throw std::runtime_error("nonlinear substep reached a finite-time singularity");
    const double log_ratio = std::log1p(x);
    const double amplitude = std::exp(-log_ratio / k);
    values[j] *= std::polar(amplitude, mr / (k * mi) * log_ratio);
  }
}

void rk4_substep(Eigen::ArrayXcd& values, const Nonlinearity& nl, double tau) {
  constexpr int kSubsteps = 4;
  const double h = tau / kSubsteps;
  auto rhs = [&](const Eigen::ArrayXcd& u) -> Eigen::ArrayXcd { return kMinusI * nonlinearity_values(u, nl); };
  for (int s = 0; s < kSubsteps; ++s) {
    const Eigen::ArrayXcd k1 = rhs(values);
    const Eigen::ArrayXcd k2 = rhs(values + 0.5 * h * k1);
    const Eigen::ArrayXcd k3 = rhs(values + 0.5 * h * k2);
    const Eigen::ArrayXcd k4 = rhs(values + h * k3);
    values += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
}

long lattice_steps(double T, double dt) {
  if (!(dt > 0.0) || !(T >= 0.0)) throw InvalidArgument("need dt > 0 and T >= 0");
  const double ratio = T / dt;
  const long n = std::lround(ratio);
  if (std::abs(ratio - static_cast<double>(n)) > 1e-9 * std::max(1.0, ratio)) {
    throw InvalidArgument("T must be an integer multiple of dt");
  }
  return n;
}

double uniform_step(const Trajectory& v) {
  if (v.size() < 2) throw InvalidArgument("trajectory needs at least two samples");
  const double dt = v[1].t - v[0].t;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs((v[i].t - v[i - 1].t) - dt) > 1e-9 * dt) throw InvalidArgument("Duhamel map needs a uniform lattice");
  }
  if (v.front().t != 0.0) throw InvalidArgument("trajectory must start at t = 0");
  return dt;
}

}  // namespace

Trajectory trajectory_difference(const Trajectory& a, const Trajectory& b) {
  if (a.size() != b.size()) throw InvalidArgument("trajectories differ in length");
  Trajectory d;
  d.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d.push_back({a[i].t, difference(a[i].u, b[i].u)});
  return d;
}

void Nonlinearity::validate() const {
  if (!(gamma > 1.0) || !std::isfinite(gamma)) throw InvalidArgument("nonlinearity power must exceed 1");
  if (!std::isfinite(mu.real()) || !std::isfinite(mu.imag())) throw InvalidArgument("coupling must be finite");
}

double Nonlinearity::constant() const { return std::abs(mu) * std::max(1.0, gamma); }

Field apply_nonlinearity(const Field& u, const Nonlinearity& nl) {
  nl.validate();
  return u.with_values(nonlinearity_values(u.values(), nl));
}

void nonlinear_substep(Eigen::ArrayXcd& values, const Nonlinearity& nl, double tau) {
  if (nl.mu == Complex(0.0, 0.0) || tau == 0.0) return;
  if (nl.variant == NonlinearityVariant::gauge_invariant) {
    gauge_substep(values, nl, tau);
  } else {
    rk4_substep(values, nl, tau);
  }
}

Trajectory splitstep_nls(const Field& u0, const Nonlinearity& nl, const Evolution& linear, double T, double dt,
                         int record_stride) {
  nl.validate();
  if (record_stride < 1) throw InvalidArgument("record stride must be positive");
  const long n = lattice_steps(T, dt);
  Trajectory out{{0.0, u0}};
  Field u = u0;
  for (long s = 1; s <= n; ++s) {
    Eigen::ArrayXcd v = u.values();
    nonlinear_substep(v, nl, 0.5 * dt);
    u = linear(u.with_values(std::move(v)), dt);
    v = u.values();
    nonlinear_substep(v, nl, 0.5 * dt);
    u = u.with_values(std::move(v));
    if (s % record_stride == 0 || s == n) out.push_back({static_cast<double>(s) * dt, u});
  }
  return out;
}

double y_norm(const Trajectory& v, const Exponent& p, const Exponent& q) {
  return strichartz_norm(v, Exponent::infinity(), Exponent(2)) + strichartz_norm(v, p, q);
}

Trajectory duhamel_map(const Trajectory& v, const Field& f, const Nonlinearity& nl, const Evolution& linear) {
  const double dt = uniform_step(v);
  Trajectory out;
  out.reserve(v.size());
  // acc_j = sum_{i<=j} c_i e^{i(t_j - s_i) Delta} G_i with c_0 = 1/2 and c_i = 1 otherwise;
  // the trapezoid sum at t_j is dt * (acc_j - G_j / 2).
  Eigen::ArrayXcd acc;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const Eigen::ArrayXcd g = nonlinearity_values(v[j].u.values(), nl);
    if (j == 0) {
      acc = 0.5 * g;
      out.push_back({v[j].t, linear(f, v[j].t)});
      continue;
    }
    acc = linear(v[j].u.with_values(acc), dt).values() + g;
    const Eigen::ArrayXcd integral = dt * (acc - 0.5 * g);
    out.push_back({v[j].t, linear(f, v[j].t).with_values(linear(f, v[j].t).values() + kMinusI * integral)});
  }
  return out;
}

const char* to_string(PicardStatus s) {
  switch (s) {
    case PicardStatus::converged:
      return "converged";
    case PicardStatus::max_iterations:
      return "max-iterations";
    case PicardStatus::non_contractive:
      return "non-contractive";
  }
  return "?";
}

std::optional<double> PicardResult::first_contraction_ratio() const {
  for (const auto& s : history) {
    if (s.contraction_ratio) return s.contraction_ratio;
  }
  return std::nullopt;
}

PicardResult picard_iterate(const Field& f, const Nonlinearity& nl, const Evolution& linear,
                            const NLSExponentSelection& exponents, double T, double dt, int max_iter, double tol) {
  nl.validate();
  // Re-applies the hypothesis gate so hand-built selections cannot bypass it.
  const auto checked = select_nls_exponents(exponents.m, exponents.n, exponents.gamma);
  if (std::abs(to_double(checked.gamma) - nl.gamma) > 1e-12) {
    throw InvalidArgument("nonlinearity power differs from the selected exponents' gamma");
  }
  if (max_iter < 1) throw InvalidArgument("max_iter must be positive");
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  const long n = lattice_steps(T, dt);
  if (n < 1) throw InvalidArgument("Picard iteration needs T >= dt");

  const Exponent p(checked.p);
  const Exponent q(checked.q);
  Trajectory v;
  v.reserve(static_cast<std::size_t>(n) + 1);
  for (long j = 0; j <= n; ++j) v.push_back({static_cast<double>(j) * dt, linear(f, static_cast<double>(j) * dt)});

  PicardResult result{PicardStatus::max_iterations, {{0, y_norm(v, p, q), std::nullopt, std::nullopt}}, {}, p, q};
  double reference = 0.0;
  std::optional<double> previous;
  int increases = 0;
  for (int k = 1; k <= max_iter; ++k) {
    Trajectory next = duhamel_map(v, f, nl, linear);
    const double d = y_norm(trajectory_difference(next, v), p, q);
    PicardState state{k, y_norm(next, p, q), d, std::nullopt};
    if (previous) {
      state.contraction_ratio = *previous > 0.0 ? d / *previous : 0.0;
      increases = d > *previous ? increases + 1 : 0;
    }
    if (k == 1) reference = state.y_norm;
    result.history.push_back(state);
    v = std::move(next);
    if (d <= tol * reference) {
      result.status = PicardStatus::converged;
      break;
    }
    if (increases >= 3) {
      result.status = PicardStatus::non_contractive;
      break;
    }
    previous = d;
  }
  result.solution = std::move(v);
  return result;
}

ScatteringReport scattering_diagnostic(const Trajectory& trajectory, const Evolution& linear) {
  if (trajectory.empty()) throw InvalidArgument("scattering diagnostic needs a trajectory");
  Trajectory z;
  z.reserve(trajectory.size());
  for (const auto& s : trajectory) z.push_back({s.t, linear(s.u, -s.t)});

  const std::size_t n = z.size();
  std::vector<SeriesPoint> tails(n);
  const Eigen::ArrayXd w = z.front().u.quadrature_weights();
  for (std::size_t i = 0; i < n; ++i) {
    double worst = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      worst = std::max(worst, (w * (z[j].u.values() - z[i].u.values()).abs2()).sum());
    }
    tails[i] = {z[i].t, std::sqrt(worst), false};
  }
  Field u_plus = z.back().u;
  return {std::move(z), std::move(tails), std::move(u_plus)};
}

std::vector<TailBoundRow> tail_strichartz_table(const ScatteringReport& report, const Trajectory& trajectory,
                                                const Exponent& p, const Exponent& q, double gamma) {
  if (report.tails.size() != trajectory.size()) throw InvalidArgument("report and trajectory lengths differ");
  std::vector<TailBoundRow> rows;
  rows.reserve(trajectory.size());
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    const Trajectory window(trajectory.begin() + static_cast<std::ptrdiff_t>(i), trajectory.end());
    const double s = strichartz_norm(window, p, q);
    const double bound = std::pow(s, gamma);
    const double tail = report.tails[i].value;
    rows.push_back({trajectory[i].t, tail, s, bound > 0.0 ? tail / bound : 0.0});
  }
  return rows;
}

}  // namespace dispersia
