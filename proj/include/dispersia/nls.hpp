#pragma once

#include <optional>
#include <vector>

#include "dispersia/decay.hpp"
#include "dispersia/exponent_algebra.hpp"
#include "dispersia/field.hpp"

namespace dispersia {

enum class NonlinearityVariant {
  gauge_invariant,  // F(u) = mu |u|^{gamma-1} u
  modulus_power,    // F(u) = mu |u|^gamma
};

/// Power nonlinearity of the equation i u_t + Delta u = F(u).
struct Nonlinearity {
  double gamma;
  NonlinearityVariant variant = NonlinearityVariant::gauge_invariant;
  Complex mu{1.0, 0.0};

  void validate() const;
  /// C with |F(u) - F(v)| <= C (|u| + |v|)^{gamma-1} |u - v| and |F(u)| <= C |u|^gamma.
  double constant() const;
};

Field apply_nonlinearity(const Field& u, const Nonlinearity& nl);

/// Pointwise solution over time tau of u_t = -i F(u). Exact for the gauge-invariant
/// variant (closed-form phase and amplitude); classical RK4 with four substeps otherwise.
void nonlinear_substep(Eigen::ArrayXcd& values, const Nonlinearity& nl, double tau);

/// Strang splitting N(dt/2) L(dt) N(dt/2) for i u_t + Delta u = F(u) on [0, T], T = n dt.
/// Records u at t = 0 and after every `record_stride` steps.
Trajectory splitstep_nls(const Field& u0, const Nonlinearity& nl, const Evolution& linear, double T, double dt,
                         int record_stride = 1);

/// Samplewise u - v on matching time lattices.
Trajectory trajectory_difference(const Trajectory& a, const Trajectory& b);

/// ||v||_Y = ||v||_{L^inf_t L^2} + ||v||_{L^p_t L^q}.
double y_norm(const Trajectory& v, const Exponent& p, const Exponent& q);

/// One application of the Duhamel map on the uniform lattice of `v`:
/// Phi(v)(t) = e^{it Delta} f - i int_0^t e^{i(t-s) Delta} F(v(s)) ds, trapezoid in s.
Trajectory duhamel_map(const Trajectory& v, const Field& f, const Nonlinearity& nl, const Evolution& linear);

struct PicardState {
  int k;
  double y_norm;
  /// ||v_k - v_{k-1}||_Y, absent for k = 0.
  std::optional<double> distance;
  /// d_k / d_{k-1}, recorded from k = 2.
  std::optional<double> contraction_ratio;
};

enum class PicardStatus { converged, max_iterations, non_contractive };

const char* to_string(PicardStatus s);

struct PicardResult {
  PicardStatus status;
  std::vector<PicardState> history;
  Trajectory solution;
  Exponent p;
  Exponent q;

  /// d_2 / d_1, when at least two distances were recorded.
  std::optional<double> first_contraction_ratio() const;
};

/// Fixed-point iteration v_{k+1} = Phi(v_k) from v_0 = e^{it Delta} f on t = 0, dt, ..., T.
///
/// Stops once d_k <= tol * ||v_1||_Y or after max_iter sweeps. Three consecutive increases
/// of d_k end the run with status non_contractive. The exponents fix the Y-norm pair
/// p = q = 1 + gamma and must come from select_nls_exponents for the same gamma.
PicardResult picard_iterate(const Field& f, const Nonlinearity& nl, const Evolution& linear,
                            const NLSExponentSelection& exponents, double T, double dt, int max_iter, double tol);

struct ScatteringReport {
  /// z(t) = e^{-it Delta} u(t).
  Trajectory profile;
  /// tail(t1) = max over recorded t2 >= t1 of ||z(t2) - z(t1)||_{L^2}.
  std::vector<SeriesPoint> tails;
  /// Last profile sample, the candidate scattering state u_+.
  Field u_plus;
};

ScatteringReport scattering_diagnostic(const Trajectory& trajectory, const Evolution& linear);

struct TailBoundRow {
  double t1;
  double tail;
  double strichartz;
  /// tail / strichartz^gamma, zero when both vanish.
  double ratio;
};

/// Compares each Cauchy tail with the Strichartz norm of u on [t1, T] raised to gamma.
std::vector<TailBoundRow> tail_strichartz_table(const ScatteringReport& report, const Trajectory& trajectory,
                                                const Exponent& p, const Exponent& q, double gamma);

}  // namespace dispersia
