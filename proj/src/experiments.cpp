#include "dispersia/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "dispersia/errors.hpp"
#include "dispersia/euclidean.hpp"
#include "dispersia/exponent_algebra.hpp"
#include "dispersia/hyperbolic.hpp"
#include "dispersia/nls.hpp"
#include "dispersia/potential.hpp"
#include "dispersia/two_particle.hpp"

namespace dispersia {

using nlohmann::json;

namespace {

std::vector<double> time_samples(const ExperimentConfig& c) {
  const double start = c.number("time.start");
  const double end = c.number("time.end");
  const long count = c.integer("time.count");
  const std::string spacing = c.text("time.spacing", "log");
  if (!(start > 0.0) || !(end > start) || count < 2) {
    throw ConfigError("time grid needs 0 < start < end and count >= 2");
  }
  std::vector<double> t(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(count - 1);
    if (spacing == "log") {
      t[static_cast<std::size_t>(i)] = start * std::pow(end / start, s);
    } else if (spacing == "linear") {
      t[static_cast<std::size_t>(i)] = start + (end - start) * s;
    } else {
      throw ConfigError("time.spacing must be log or linear");
    }
  }
  t.front() = start;
  t.back() = end;
  return t;
}

FitWindow fit_window(const ExperimentConfig& c) { return {c.number("fit.t_min"), c.number("fit.t_max")}; }

TimeStepping stepping(const ExperimentConfig& c, const std::string& fallback) {
  const std::string s = c.text("decay.stepping", fallback);
  if (s == "direct") return TimeStepping::direct;
  if (s == "marching") return TimeStepping::marching;
  throw ConfigError("decay.stepping must be direct or marching");
}

int positive_int(const ExperimentConfig& c, const std::string& key, long fallback = -1) {
  const long v = fallback < 0 ? c.integer(key) : c.integer(key, fallback);
  if (v < 1 || v > 1'000'000'000) throw ConfigError("key '" + key + "' must be a positive integer");
  return static_cast<int>(v);
}

Grid1D torus_grid(const ExperimentConfig& c, const std::string& section = "grid") {
  return make_grid(positive_int(c, section + ".points"), c.number(section + ".length"), GridKind::euclidean_torus);
}

Grid1D radial_grid(const ExperimentConfig& c) {
  return make_grid(positive_int(c, "grid.points"), c.number("grid.radius"), GridKind::hyperbolic_radial);
}

double center_of(const Grid1D& g) { return g.is_radial() ? 0.0 : g.node(g.size() / 2); }

/// Product Gaussian amplitude * exp(-sum d_a^2 / (2 w^2)), centred mid-torus or at the origin of radial axes.
Field gaussian_data(const std::vector<Grid1D>& grids, double width, double amplitude = 1.0) {
  if (!(width > 0.0)) throw ConfigError("data.width must be positive");
  std::vector<double> centers;
  for (const auto& g : grids) centers.push_back(center_of(g));
  return sample_field(grids, [&](std::span<const double> x) {
    double r2 = 0.0;
    for (std::size_t a = 0; a < x.size(); ++a) {
      const double d = grids[a].is_radial() ? x[a] : periodic_offset(grids[a], x[a], centers[a]);
      r2 += d * d;
    }
    return Complex(amplitude * std::exp(-0.5 * r2 / (width * width)), 0.0);
  });
}

PotentialSpec potential_from(const ExperimentConfig& c, double center) {
  const std::string family = c.text("potential.family", "sech_squared");
  const double amplitude = c.number("potential.amplitude");
  const double width = c.number("potential.width", 1.0);
  PotentialSpec spec;
  if (family == "sech_squared") {
    spec = PotentialSpec::sech_squared(amplitude, width, center);
  } else if (family == "gaussian") {
    spec = PotentialSpec::gaussian(amplitude, width, center);
  } else {
    throw ConfigError("potential.family must be sech_squared or gaussian");
  }
  spec.validate();
  return spec;
}

json potential_json(const PotentialSpec& p) {
  return {{"family", p.family == PotentialFamily::sech_squared ? "sech_squared" : "gaussian"},
          {"amplitude", p.amplitude},
          {"width", p.width}};
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

Check verdict_check(const std::string& name, const Verdict& v) {
  return {name, v.pass,
          "slope " + fmt(v.slope) + " +- " + fmt(v.std_error) + ", predicted -" + to_string(v.predicted) +
              ", tolerance " + fmt(v.tolerance) + ", " + std::to_string(v.n_samples) + " samples in [" +
              fmt(v.window.t_min) + ", " + fmt(v.window.t_max) + "]"};
}

/// Ratio series, log-log fit and verdict, recorded under `key`.
void decay_measurement(ExperimentResult& out, const std::string& key, const Evolution& evolve, const Field& u0,
                       const ExperimentConfig& c, const Exponent& r, const Exponent& r_tilde,
                       const Rational& predicted, TimeStepping mode) {
  const auto times = time_samples(c);
  const Series series = dispersive_ratio_series(evolve, u0, times, r, r_tilde, mode);
  DecayFit fit = fit_decay_exponent(series, fit_window(c));
  const Verdict verdict = compare_prediction(fit, predicted, c.number("fit.tolerance"));
  fit.predicted = predicted;
  fit.verdict = verdict.pass;
  out.tables.push_back(series_table(key, series));
  out.results[key] = {{"fit", to_json(fit)},
                      {"verdict", to_json(verdict)},
                      {"r", to_string(r)},
                      {"r_tilde", to_string(r_tilde)},
                      {"stepping", mode == TimeStepping::direct ? "direct" : "marching"},
                      {"flagged_samples", std::count_if(series.begin(), series.end(),
                                                        [](const SeriesPoint& p) { return p.flagged; })}};
  // Bound states show up as a flat tail; report it, don't judge it.
  Series tail;
  for (auto it = series.rbegin(); it != series.rend() && tail.size() < 5; ++it) {
    if (!it->flagged) tail.insert(tail.begin(), *it);
  }
  if (tail.size() == 5) {
    const double late = fit_decay_exponent(tail, {tail.front().t, tail.back().t}).slope;
    out.results[key]["late_slope"] = late;
    out.results[key]["plateau"] = late > -0.25 * to_double(predicted);
  }
  out.checks.push_back(verdict_check(key + " decay rate", verdict));
}

json domain_json(const Field& u0, const std::vector<PropagatorSpec>& specs, double t_max) {
  json axes = json::array();
  for (std::size_t a = 0; a < specs.size(); ++a) {
    axes.push_back({{"length", specs[a].grid.length()},
                    {"points", specs[a].grid.size()},
                    {"required_length", required_length(u0, static_cast<int>(a),
                                                        specs[a].laplacian_coefficient, t_max)}});
  }
  return axes;
}

int factor_count(const ExperimentConfig& c) {
  const int k = positive_int(c, "grid.factors", 2);
  if (k > 3) throw ConfigError("grid.factors must be 1, 2 or 3");
  return k;
}

// ---------------------------------------------------------------- experiments

ExperimentResult run_free_product(const ExperimentConfig& c) {
  ExperimentResult out;
  const Grid1D grid = torus_grid(c);
  const int k = factor_count(c);
  std::vector<PropagatorSpec> specs(static_cast<std::size_t>(k), PropagatorSpec::free(grid));
  const Field u0 = gaussian_data(std::vector<Grid1D>(static_cast<std::size_t>(k), grid), c.number("data.width"));
  const ProductPropagator flow(specs);
  out.results["factors"] = k;
  out.results["domain"] = domain_json(u0, specs, c.number("time.end"));
  decay_measurement(out, "linf_l1", flow, u0, c, Exponent::infinity(), Exponent(1), flow.claimed_decay_exponent(),
                    stepping(c, "direct"));
  return out;
}

ExperimentResult run_potential_product(const ExperimentConfig& c) {
  ExperimentResult out;
  const Grid1D grid = torus_grid(c);
  const int k = factor_count(c);
  const PotentialSpec pot = potential_from(c, center_of(grid));
  const int steps = positive_int(c, "potential.steps_per_unit_time", PropagatorSpec::kDefaultSplitSteps);
  const auto samples = sample_potential(pot, grid);
  std::vector<PropagatorSpec> specs(static_cast<std::size_t>(k),
                                    PropagatorSpec::with_potential(grid, samples, 1.0, steps));
  const Field u0 = gaussian_data(std::vector<Grid1D>(static_cast<std::size_t>(k), grid), c.number("data.width"));
  const ProductPropagator flow(specs);
  const auto weight = check_weight_integral(pot, 0.5 * grid.length(), 4096);
  out.results["factors"] = k;
  out.results["potential"] = potential_json(pot);
  out.results["weight_integral"] = {{"value", weight.value},
                                    {"tail_bound", weight.tail_bound ? json(*weight.tail_bound) : json()}};
  out.results["domain"] = domain_json(u0, specs, c.number("time.end"));
  decay_measurement(out, "linf_l1", flow, u0, c, Exponent::infinity(), Exponent(1), flow.claimed_decay_exponent(),
                    stepping(c, "marching"));
  return out;
}

ExperimentResult run_interpolated(const ExperimentConfig& c) {
  ExperimentResult out;
  const Grid1D grid = torus_grid(c);
  const int k = factor_count(c);
  const Exponent q = c.exponent("decay.q");
  const Exponent q_dual = dual_exponent(q);
  std::vector<PropagatorSpec> specs(static_cast<std::size_t>(k), PropagatorSpec::free(grid));
  const Field u0 = gaussian_data(std::vector<Grid1D>(static_cast<std::size_t>(k), grid), c.number("data.width"));
  const ProductPropagator flow(specs);
  const Rational sigma = interpolation_exponent(q, DispersionIndex::total(flow.claimed_decay_exponent()));
  out.results["factors"] = k;
  out.results["q"] = to_string(q);
  out.results["predicted_exponent"] = to_string(sigma);
  out.results["domain"] = domain_json(u0, specs, c.number("time.end"));
  decay_measurement(out, "lq_lqdual", flow, u0, c, q, q_dual, sigma, stepping(c, "direct"));
  return out;
}

ExperimentResult run_two_particle(const ExperimentConfig& c) {
  ExperimentResult out;
  const double width = c.number("data.width");

  {
    const Grid1D grid = torus_grid(c, "equivalence");
    const PotentialSpec pot = potential_from(c, 0.0);
    const auto v = sample_potential(pot, grid);
    const int steps = positive_int(c, "equivalence.steps_per_unit_time");
    const double t = c.number("equivalence.t");
    const Field u0 = gaussian_data({grid, grid}, width);
    const Field rotated = TwoParticleFlow(grid, v, steps)(u0, t);
    const Field oracle = pair_splitstep_propagate(grid, v, u0, t, steps);
    const double diff = lp_norm(difference(rotated, oracle), Exponent(2));
    const double tol = c.number("equivalence.tolerance");
    out.results["equivalence"] = {{"points", grid.size()}, {"length", grid.length()}, {"t", t},
                                  {"steps_per_unit_time", steps}, {"l2_difference", diff},
                                  {"l2_norm", lp_norm(oracle, Exponent(2))}, {"tolerance", tol}};
    out.checks.push_back({"rotated vs original coordinates", diff <= tol,
                          "L2 difference " + fmt(diff) + " at t = " + fmt(t) + ", tolerance " + fmt(tol)});
  }

  const Grid1D grid = torus_grid(c, "decay");
  const PotentialSpec pot = potential_from(c, 0.0);
  const int steps = positive_int(c, "potential.steps_per_unit_time", PropagatorSpec::kDefaultSplitSteps);
  const TwoParticleFlow flow(grid, sample_potential(pot, grid), steps);
  // Norms are measured in the rotated frame, where the product torus is the computational domain.
  const Field v0 = flow.to_rotated_frame(gaussian_data({grid, grid}, width));
  const ProductPropagator& rotated = flow.rotated_flow();
  out.results["potential"] = potential_json(pot);
  out.results["domain"] = domain_json(v0, rotated.specs(), c.number("time.end"));
  decay_measurement(out, "linf_l1", rotated, v0, c, Exponent::infinity(), Exponent(1),
                    rotated.claimed_decay_exponent(), stepping(c, "marching"));
  return out;
}

ExperimentResult run_hyperbolic(const ExperimentConfig& c, int factors) {
  ExperimentResult out;
  const Grid1D grid = radial_grid(c);
  std::vector<PropagatorSpec> specs(static_cast<std::size_t>(factors), PropagatorSpec::hyperbolic(grid));
  const Field u0 = gaussian_data(std::vector<Grid1D>(static_cast<std::size_t>(factors), grid), c.number("data.width"));
  const ProductPropagator flow(specs);
  out.results["factors"] = factors;
  out.results["radius"] = grid.length();
  out.results["points"] = grid.size();
  decay_measurement(out, "linf_l1", flow, u0, c, Exponent::infinity(), Exponent(1), flow.claimed_decay_exponent(),
                    stepping(c, "direct"));
  if (factors == 2) {
    // A single H^6 decays like |t|^{-3/2} for large times; the product must beat it.
    const double single_space_rate = 1.5;
    const double slope = out.results["linf_l1"]["fit"]["slope"];
    const double tol = c.number("fit.tolerance");
    out.results["single_space_large_time_rate"] = single_space_rate;
    out.checks.push_back({"faster than H^6 large-time decay", slope < -single_space_rate - tol,
                          "slope " + fmt(slope) + " vs -" + fmt(single_space_rate)});
  }
  return out;
}

ExperimentResult run_admissible(const ExperimentConfig& c) {
  ExperimentResult out;
  const int m = positive_int(c, "admissible.m");
  const int n = positive_int(c, "admissible.n");
  const int den = positive_int(c, "admissible.denominator");
  Table table = admissible_region_table(m, n, den);
  long members = 0;
  for (const auto& row : table.rows) members += row[4] == "1";
  const bool corner = in_triangle_T(ExponentPair(Rational(0), Rational(1, 2)), m, n);
  out.checks.push_back({"(inf, 2) belongs to T", corner, corner ? "member" : "not a member"});

  const DispersionIndex idx(Rational(m, 2), Rational(n, 2));
  json endpoint;
  if (idx.ab() > 1) {
    const Rational inv_q = (idx.ab() - 1) / (2 * idx.ab());
    const auto cls = is_admissible(ExponentPair(Rational(1, 2), inv_q), idx);
    endpoint = {{"p", "2"}, {"q", to_string(Exponent(1 / inv_q))}, {"classification", to_string(cls)}};
    out.checks.push_back({"endpoint pair classified endpoint", cls == Admissibility::endpoint,
                          "(2, " + to_string(Exponent(1 / inv_q)) + ") -> " + to_string(cls)});
  }
  out.results = {{"m", m}, {"n", n}, {"denominator", den}, {"lattice_points", table.rows.size()},
                 {"members_of_T", members}, {"index", to_string(idx.ab())}, {"endpoint", endpoint}};
  out.tables.push_back(std::move(table));
  return out;
}

struct NlsSetup {
  Grid1D grid;
  ProductPropagator linear;
  Nonlinearity nl;
  NLSExponentSelection exponents;
  double width;
  double amplitude;
  double T;
  double dt;
};

NlsSetup nls_setup(const ExperimentConfig& c) {
  const Grid1D grid = torus_grid(c);
  const Rational gamma = c.rational("nls.gamma");
  const int m = positive_int(c, "nls.m");
  const int n = positive_int(c, "nls.n");
  const auto exponents = select_nls_exponents(m, n, gamma);
  const std::string variant = c.text("nls.variant", "gauge_invariant");
  Nonlinearity nl{to_double(gamma), NonlinearityVariant::gauge_invariant,
                  Complex(c.number("nls.mu", 1.0), c.number("nls.mu_imag", 0.0))};
  if (variant == "modulus_power") {
    nl.variant = NonlinearityVariant::modulus_power;
  } else if (variant != "gauge_invariant") {
    throw ConfigError("nls.variant must be gauge_invariant or modulus_power");
  }
  nl.validate();
  return {grid,
          ProductPropagator({PropagatorSpec::free(grid), PropagatorSpec::free(grid)}),
          nl,
          exponents,
          c.number("data.width"),
          c.number("data.amplitude"),
          c.number("time.T"),
          c.number("time.dt")};
}

json exponents_json(const NLSExponentSelection& e) {
  return {{"m", e.m}, {"n", e.n}, {"gamma", to_string(e.gamma)}, {"beta", to_string(e.beta)},
          {"p", to_string(e.p)}, {"q", to_string(e.q)}, {"critical_power", to_string(critical_power(e.m, e.n))}};
}

json picard_history_json(const PicardResult& r) {
  json h = json::array();
  for (const auto& st : r.history) {
    h.push_back({{"k", st.k},
                 {"y_norm", st.y_norm},
                 {"distance", st.distance ? json(*st.distance) : json()},
                 {"contraction_ratio", st.contraction_ratio ? json(*st.contraction_ratio) : json()}});
  }
  return h;
}

json snapshots_json(const Trajectory& traj, const Exponent& q) {
  json out = json::array();
  for (const auto& snap : traj) {
    out.push_back({{"t", snap.t},
                   {"l2", lp_norm(snap.u, Exponent(2))},
                   {"lq", lp_norm(snap.u, q)},
                   {"linf", lp_norm(snap.u, Exponent::infinity())}});
  }
  return out;
}

Table picard_table(const std::string& name, const PicardResult& r) {
  Table t{name, {"k", "y_norm", "distance", "contraction_ratio"}, {}};
  for (const auto& s : r.history) {
    t.rows.push_back({std::to_string(s.k), format_number(s.y_norm), s.distance ? format_number(*s.distance) : "",
                      s.contraction_ratio ? format_number(*s.contraction_ratio) : ""});
  }
  return t;
}

double mass(const Field& u) { return std::pow(lp_norm(u, Exponent(2)), 2); }

ExperimentResult run_nls_smalldata(const ExperimentConfig& c) {
  ExperimentResult out;
  const NlsSetup s = nls_setup(c);
  const int max_iter = positive_int(c, "picard.max_iter");
  const double tol = c.number("picard.tol");
  const Field f = gaussian_data({s.grid, s.grid}, s.width, s.amplitude);
  const Field f_half = gaussian_data({s.grid, s.grid}, s.width, 0.5 * s.amplitude);

  const PicardResult full = picard_iterate(f, s.nl, s.linear, s.exponents, s.T, s.dt, max_iter, tol);
  const PicardResult half = picard_iterate(f_half, s.nl, s.linear, s.exponents, s.T, s.dt, max_iter, tol);
  out.tables.push_back(picard_table("picard_full", full));
  out.tables.push_back(picard_table("picard_half", half));

  bool contractive = full.status == PicardStatus::converged;
  double worst_ratio = 0.0;
  for (const auto& st : full.history) {
    if (st.contraction_ratio) worst_ratio = std::max(worst_ratio, *st.contraction_ratio);
  }
  contractive = contractive && worst_ratio < 1.0;
  out.checks.push_back({"Picard iteration contracts", contractive,
                        std::string(to_string(full.status)) + " after " + std::to_string(full.history.back().k) +
                            " sweeps, largest ratio " + fmt(worst_ratio)});

  const auto r_full = full.first_contraction_ratio();
  const auto r_half = half.first_contraction_ratio();
  const double expected = std::pow(2.0, -(s.nl.gamma - 1.0));
  const double tol_scaling = c.number("picard.scaling_tolerance");
  double measured = std::nan("");
  if (r_full && r_half && *r_full > 0.0) measured = *r_half / *r_full;
  const bool scaling_ok = std::abs(measured / expected - 1.0) <= tol_scaling;
  out.checks.push_back({"contraction ratio scales like amplitude^(gamma-1)", scaling_ok,
                        "halving the data multiplies the first ratio by " + fmt(measured) + ", expected " +
                            fmt(expected) + " within " + fmt(100 * tol_scaling) + "%"});

  if (full.status == PicardStatus::converged) {
    const Trajectory again = duhamel_map(full.solution, f, s.nl, s.linear);
    const double y_shift = y_norm(trajectory_difference(again, full.solution), full.p, full.q);
    const double allowed = 2.0 * tol * full.history.at(1).y_norm;
    out.checks.push_back({"converged iterate is a fixed point", y_shift <= allowed,
                          "one more sweep moves it by " + fmt(y_shift) + " in Y, allowed " + fmt(allowed)});
  }

  const Trajectory split = splitstep_nls(f, s.nl, s.linear, s.T, s.dt);
  double agreement = 0.0;
  for (std::size_t i = 0; i < split.size(); ++i) {
    agreement = std::max(agreement, lp_norm(difference(split[i].u, full.solution[i].u), Exponent(2)));
  }
  const double tol_cross = c.number("picard.cross_tolerance");
  out.checks.push_back({"Picard agrees with split-step", agreement <= tol_cross,
                        "L^inf_t L^2 difference " + fmt(agreement) + ", tolerance " + fmt(tol_cross)});

  const double m0 = mass(f);
  double drift = 0.0;
  for (const auto& snap : split) drift = std::max(drift, std::abs(mass(snap.u) - m0) / m0);

  Table norms{"norms", {"t", "l2_splitstep", "l2_picard", "lq_picard"}, {}};
  for (std::size_t i = 0; i < split.size(); ++i) {
    norms.rows.push_back({format_number(split[i].t), format_number(lp_norm(split[i].u, Exponent(2))),
                          format_number(lp_norm(full.solution[i].u, Exponent(2))),
                          format_number(lp_norm(full.solution[i].u, full.q))});
  }
  out.tables.push_back(std::move(norms));

  out.results = {{"exponents", exponents_json(s.exponents)},
                 {"amplitude", s.amplitude},
                 {"T", s.T},
                 {"dt", s.dt},
                 {"status", to_string(full.status)},
                 {"status_half", to_string(half.status)},
                 {"first_ratio", r_full ? json(*r_full) : json()},
                 {"first_ratio_half", r_half ? json(*r_half) : json()},
                 {"ratio_scaling", measured},
                 {"expected_scaling", expected},
                 {"cross_method_difference", agreement},
                 {"relative_mass_drift", drift},
                 {"nonlinearity_constant", s.nl.constant()},
                 {"picard_history", picard_history_json(full)},
                 {"picard_history_half", picard_history_json(half)},
                 {"snapshots", snapshots_json(full.solution, full.q)}};
  if (s.nl.variant == NonlinearityVariant::gauge_invariant && s.nl.mu.imag() == 0.0) {
    out.checks.push_back({"split-step conserves mass", drift <= 1e-10, "relative drift " + fmt(drift)});
  }
  return out;
}

const TailBoundRow* row_at(const std::vector<TailBoundRow>& rows, double t) {
  for (const auto& r : rows) {
    if (std::abs(r.t1 - t) < 1e-9 * std::max(1.0, t)) return &r;
  }
  throw ConfigError("no recorded sample at t = " + fmt(t) + "; adjust time.dt or time.record_stride");
}

ExperimentResult run_nls_scattering(const ExperimentConfig& c) {
  ExperimentResult out;
  const NlsSetup s = nls_setup(c);
  const int stride = positive_int(c, "time.record_stride", 1);
  const Field f = gaussian_data({s.grid, s.grid}, s.width, s.amplitude);
  const Trajectory traj = splitstep_nls(f, s.nl, s.linear, s.T, s.dt, stride);
  const ScatteringReport report = scattering_diagnostic(traj, s.linear);
  const Exponent p(s.exponents.p);
  const Exponent q(s.exponents.q);
  const auto rows = tail_strichartz_table(report, traj, p, q, s.nl.gamma);

  const double t_early = c.number("scattering.t_early");
  const double t_late = c.number("scattering.t_late");
  const double factor = c.number("scattering.decrease_factor");
  const double early = row_at(rows, t_early)->tail;
  const double late = row_at(rows, t_late)->tail;
  out.checks.push_back({"Cauchy tails decrease", late * factor <= early,
                        "tail(" + fmt(t_early) + ") = " + fmt(early) + ", tail(" + fmt(t_late) + ") = " + fmt(late) +
                            ", required factor " + fmt(factor)});

  // C is calibrated on the first quarter of the run and checked on every row.
  const double slack = c.number("scattering.constant_slack", 1.5);
  double constant = 0.0;
  for (const auto& r : rows) {
    if (r.t1 <= 0.25 * s.T && r.strichartz > 0.0) constant = std::max(constant, r.ratio);
  }
  constant *= slack;
  bool bound_ok = true;
  double worst = 0.0;
  for (const auto& r : rows) {
    if (r.strichartz <= 0.0) continue;
    worst = std::max(worst, r.ratio);
    bound_ok = bound_ok && r.tail <= constant * std::pow(r.strichartz, s.nl.gamma);
  }
  out.checks.push_back({"tails bounded by Strichartz norm^gamma", bound_ok,
                        "C = " + fmt(constant) + " from t <= " + fmt(0.25 * s.T) + ", largest ratio " + fmt(worst)});

  Table table{"tails", {"t1", "tail", "strichartz", "ratio"}, {}};
  for (const auto& r : rows) {
    table.rows.push_back({format_number(r.t1), format_number(r.tail), format_number(r.strichartz),
                          format_number(r.ratio)});
  }
  out.tables.push_back(std::move(table));
  out.results = {{"exponents", exponents_json(s.exponents)},
                 {"amplitude", s.amplitude},
                 {"T", s.T},
                 {"dt", s.dt},
                 {"record_stride", stride},
                 {"tail_early", early},
                 {"tail_late", late},
                 {"tail_constant", constant},
                 {"u_plus_l2", lp_norm(report.u_plus, Exponent(2))},
                 {"initial_l2", lp_norm(f, Exponent(2))},
                 {"snapshots", snapshots_json(traj, q)}};
  return out;
}

using Runner = std::function<ExperimentResult(const ExperimentConfig&)>;

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> table{
      {"free-product-decay", run_free_product},
      {"potential-product-decay", run_potential_product},
      {"two-particle", run_two_particle},
      {"hyperbolic-decay", [](const ExperimentConfig& c) { return run_hyperbolic(c, 1); }},
      {"hyperbolic-product-decay", [](const ExperimentConfig& c) { return run_hyperbolic(c, 2); }},
      {"interpolated-decay", run_interpolated},
      {"admissible-region", run_admissible},
      {"nls-smalldata", run_nls_smalldata},
      {"nls-scattering", run_nls_scattering},
  };
  return table;
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  const auto tmp = path.parent_path() / ("." + path.filename().string() + ".tmp");
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw OutputError("cannot write '" + tmp.string() + "'");
    os << content;
    os.close();
    if (!os) throw OutputError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw OutputError("cannot rename into '" + path.string() + "': " + ec.message());
}

std::string csv_text(const Table& t) {
  std::string s;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
    s += "\n";
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return s;
}

}  // namespace

const std::vector<ExperimentInfo>& list_experiments() {
  static const std::vector<ExperimentInfo> registry{
      {"free-product-decay", "L1 -> Linf decay of free flows on products of 1 to 3 torus factors",
       "additivity of decay exponents for commuting factor flows"},
      {"potential-product-decay", "decay of -d^2/dx^2 + V factors with a repulsive sech^2 potential",
       "product of Schrodinger operators with decaying potentials"},
      {"two-particle", "two particles with pair interaction V(x - y), solved in rotated coordinates",
       "two-body reduction via the change of variables x' = x + y"},
      {"hyperbolic-decay", "large-time decay of the radial flow on H^3",
       "large-time dispersive estimate on hyperbolic space"},
      {"hyperbolic-product-decay", "bi-radial flow on H^3 x H^3, rate |t|^-3",
       "dispersive estimate on products of hyperbolic spaces"},
      {"interpolated-decay", "L^q' -> L^q decay of a free product flow",
       "interpolated L^q' -> L^q estimate"},
      {"admissible-region", "rational lattice classification of the Strichartz triangle T",
       "Strichartz triangle T of H^m x H^n"},
      {"nls-smalldata", "Picard iteration for small-data NLS on a product torus",
       "small-data global well-posedness by contraction"},
      {"nls-scattering", "Cauchy tails of e^{-it Delta} u(t) for a small-data NLS run",
       "scattering via the Cauchy criterion"},
  };
  return registry;
}

std::string format_number(double x) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, end);
}

Table series_table(const std::string& name, const Series& series) {
  Table t{name, {"t", "value", "flagged"}, {}};
  for (const auto& p : series) t.rows.push_back({format_number(p.t), format_number(p.value), p.flagged ? "1" : "0"});
  return t;
}

Table admissible_region_table(int m, int n, int denominator) {
  if (m < 2 || n < 2) throw InvalidArgument("T(m, n) needs m, n >= 2");
  if (denominator < 2) throw InvalidArgument("lattice denominator must be at least 2");
  const DispersionIndex idx(Rational(m, 2), Rational(n, 2));
  Table t{"admissible_region", {"inv_p", "inv_q", "p", "q", "in_T", "admissibility"}, {}};
  for (int i = 0; 2 * i <= denominator; ++i) {
    for (int j = 0; 2 * j <= denominator; ++j) {
      const ExponentPair pair(Rational(i, denominator), Rational(j, denominator));
      t.rows.push_back({to_string(pair.inv_p()), to_string(pair.inv_q()), to_string(pair.p()), to_string(pair.q()),
                        in_triangle_T(pair, m, n) ? "1" : "0", to_string(is_admissible(pair, idx))});
    }
  }
  return t;
}

bool ExperimentResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

json ExperimentResult::report() const {
  json checks_json = json::array();
  for (const auto& c : checks) checks_json.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"experiment", experiment}, {"version", kVersion}, {"fingerprint", fingerprint},
          {"results", results},       {"checks", checks_json},   {"verdict", passed() ? "pass" : "fail"}};
}

std::string ExperimentResult::summary() const {
  std::string s = "experiment  " + experiment + "\nversion     " + kVersion + "\nfingerprint " + fingerprint + "\n\n";
  for (const auto& c : checks) s += std::string(c.pass ? "PASS  " : "FAIL  ") + c.name + ": " + c.detail + "\n";
  s += "\nverdict: " + std::string(passed() ? "pass" : "fail") + "\n";
  return s;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const std::string name = config.experiment();
  const auto it = runners().find(name);
  if (it == runners().end()) throw UnknownExperiment("unknown experiment '" + name + "'");
  ExperimentResult result = it->second(config);
  result.experiment = name;
  result.fingerprint = config.fingerprint();
  return result;
}

std::filesystem::path output_directory(const ExperimentConfig& config) {
  const std::filesystem::path dir = config.text("output.directory", "results/" + config.experiment());
  if (dir.is_absolute()) return dir;
  const char* root = std::getenv("DISPERSIA_OUTPUT_ROOT");
  return (root && *root ? std::filesystem::path(root) : std::filesystem::current_path()) / dir;
}

void write_outputs(const ExperimentResult& result, const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw OutputError("cannot create '" + directory.string() + "': " + ec.message());
  for (const auto& t : result.tables) write_atomically(directory / (t.name + ".csv"), csv_text(t));
  write_atomically(directory / "report.json", result.report().dump(2) + "\n");
  write_atomically(directory / "summary.txt", result.summary());
}

ExitCode exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return ExitCode::config_error;
  if (dynamic_cast<const UnknownExperiment*>(&e)) return ExitCode::unknown_experiment;
  if (dynamic_cast<const HypothesisViolation*>(&e)) return ExitCode::hypothesis_violation;
  if (dynamic_cast<const OutputError*>(&e) || dynamic_cast<const std::filesystem::filesystem_error*>(&e)) {
    return ExitCode::io_error;
  }
  return ExitCode::numerical_error;
}

}  // namespace dispersia
