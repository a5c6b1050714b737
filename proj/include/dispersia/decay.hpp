#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include <json.hpp>

#include "dispersia/exponent.hpp"
#include "dispersia/field.hpp"

namespace dispersia {

/// Evolution operator u0 -> u(t). Implementations must be time-additive.
using Evolution = std::function<Field(const Field&, double)>;

struct SeriesPoint {
  double t;
  double value;
  bool flagged = false;
};
using Series = std::vector<SeriesPoint>;

/// Detects self-interference on truncated domains.
///
/// A sample is flagged when more than 1% of its L^2 mass lies in the boundary band
/// of any axis: within 5% of the torus length from the antipode of the initial
/// centre, or within the outer 5% of r_max on a radial axis.
class WrapMonitor {
 public:
  static constexpr double kBandFraction = 0.05;
  static constexpr double kMassThreshold = 0.01;

  explicit WrapMonitor(const Field& initial);

  /// Largest per-axis fraction of L^2 mass inside the boundary band.
  double boundary_fraction(const Field& u) const;
  bool flagged(const Field& u) const { return boundary_fraction(u) > kMassThreshold; }
  const std::vector<double>& centers() const { return centers_; }

 private:
  std::vector<Grid1D> grids_;
  std::vector<double> centers_;
};

/// Radius in wavenumber space containing `fraction` of the spectral mass marginal along `axis`.
/// Radial axes use the sine-transform lattice k*pi/r_max.
double spectral_radius(const Field& u, int axis, double fraction = 0.9999);

/// Smallest axis length (torus period or r_max) that keeps data of this spectral
/// radius away from the boundary up to t_max: 4 * c * xi_eff * t_max.
double required_length(const Field& u, int axis, double laplacian_coefficient, double t_max);

enum class TimeStepping { direct, marching };

/// ||u(t)||_r for each t, flagged through a WrapMonitor built from u0.
/// `marching` reuses the previous sample and evolves only by the increment.
Series norm_series(const Evolution& evolve, const Field& u0, std::span<const double> times, const Exponent& r,
                   TimeStepping stepping = TimeStepping::direct);

struct FitWindow {
  double t_min;
  double t_max;
};

struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  double std_error = 0.0;
  FitWindow window{0.0, 0.0};
  int n_samples = 0;
  std::optional<Rational> predicted;
  std::optional<bool> verdict;
};

/// Ordinary least squares of log(value) on log(t) over unflagged samples inside the window.
DecayFit fit_decay_exponent(const Series& series, FitWindow window);

struct RegimeFit {
  DecayFit small_time;
  DecayFit large_time;
};

/// Separate fits for t < split_time and t >= split_time.
RegimeFit regime_decay_fit(const Series& series, double split_time = 1.0);

struct Verdict {
  bool pass;
  double slope;
  double std_error;
  Rational predicted;
  double tolerance;
  FitWindow window;
  int n_samples;
};

/// Passes iff |slope + predicted| <= tol: a decay |t|^{-sigma} has log-log slope -sigma.
Verdict compare_prediction(const DecayFit& fit, const Rational& predicted, double tol);

nlohmann::json to_json(const Verdict& v);
nlohmann::json to_json(const DecayFit& fit);

/// Columns t, value, flagged with full round-trip precision.
void write_series_csv(std::ostream& os, const Series& series);

struct Snapshot {
  double t;
  Field u;
};
using Trajectory = std::vector<Snapshot>;

/// Time-trapezoid of ||u(t)||_q^p on the recorded times, then the p-th root; p = ∞ takes the maximum.
double strichartz_norm(const Trajectory& trajectory, const Exponent& p, const Exponent& q);

}  // namespace dispersia
