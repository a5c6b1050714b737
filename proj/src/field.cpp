#include "dispersia/field.hpp"

#include <algorithm>
#include <cmath>

#include "dispersia/errors.hpp"

namespace dispersia {

namespace {

const char* const kDefaultAxisNames[] = {"x", "y", "z"};

std::vector<std::string> default_names(std::size_t rank) {
  return {kDefaultAxisNames, kDefaultAxisNames + rank};
}

/// Scaled power sum: max|v| * (sum w (|v|/max)^r)^(1/r) avoids overflow for large weights.
double weighted_norm(const Eigen::ArrayXd& modulus, const Eigen::ArrayXd& weights, const Exponent& r) {
  if (modulus.size() == 0) return 0.0;
  const double peak = modulus.maxCoeff();
  if (r.is_infinite() || peak == 0.0) return peak;
  const double p = r.to_double();
  const Eigen::ArrayXd scaled = modulus / peak;
  double sum = 0.0;
  if (p == 1.0) {
    sum = (weights * scaled).sum();
  } else if (p == 2.0) {
    sum = (weights * scaled.square()).sum();
  } else {
    sum = (weights * scaled.pow(p)).sum();
  }
  return peak * std::pow(sum, 1.0 / p);
}

}  // namespace

Eigen::Index axis_stride(const Shape& shape, int axis) {
  Eigen::Index stride = 1;
  for (std::size_t a = static_cast<std::size_t>(axis) + 1; a < shape.size(); ++a) stride *= shape[a];
  return stride;
}

Field::Field(std::vector<Grid1D> grids, Eigen::ArrayXcd values, std::vector<std::string> axis_names)
    : grids_(std::move(grids)), axis_names_(std::move(axis_names)), values_(std::move(values)) {
  if (grids_.empty() || grids_.size() > kMaxRank) throw InvalidArgument("field rank must be 1, 2 or 3");
  if (axis_names_.empty()) axis_names_ = default_names(grids_.size());
  if (axis_names_.size() != grids_.size()) throw InvalidArgument("one axis name per grid required");
  for (std::size_t a = 0; a < axis_names_.size(); ++a) {
    for (std::size_t b = a + 1; b < axis_names_.size(); ++b) {
      if (axis_names_[a] == axis_names_[b]) throw InvalidArgument("duplicate axis name '" + axis_names_[a] + "'");
    }
  }
  Eigen::Index total = 1;
  for (const auto& g : grids_) {
    shape_.push_back(g.size());
    total *= g.size();
  }
  if (values_.size() != total) throw InvalidArgument("field values do not match the grid shape");
  if (!values_.allFinite()) throw InvalidArgument("field samples must be finite");
}

int Field::axis_index(std::string_view name) const {
  const auto it = std::find(axis_names_.begin(), axis_names_.end(), name);
  if (it == axis_names_.end()) throw InvalidArgument("field has no axis named '" + std::string(name) + "'");
  return static_cast<int>(it - axis_names_.begin());
}

Eigen::Index Field::flat_index(std::span<const Eigen::Index> index) const {
  if (index.size() != shape_.size()) throw InvalidArgument("index rank mismatch");
  Eigen::Index flat = 0;
  for (std::size_t a = 0; a < shape_.size(); ++a) {
    if (index[a] < 0 || index[a] >= shape_[a]) throw InvalidArgument("index out of range");
    flat = flat * shape_[a] + index[a];
  }
  return flat;
}

Complex Field::at(std::span<const Eigen::Index> index) const { return values_[flat_index(index)]; }

Field Field::with_values(Eigen::ArrayXcd values) const { return Field(grids_, std::move(values), axis_names_); }

Eigen::ArrayXd Field::quadrature_weights() const {
  Eigen::ArrayXd w = Eigen::ArrayXd::Ones(1);
  for (const auto& g : grids_) {
    const Eigen::ArrayXd gw = g.weights();
    Eigen::ArrayXd next(w.size() * gw.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) next.segment(i * gw.size(), gw.size()) = w[i] * gw;
    w = std::move(next);
  }
  return w;
}

Field sample_field(std::vector<Grid1D> grids, const std::function<Complex(std::span<const double>)>& fn,
                   std::vector<std::string> axis_names) {
  Eigen::Index total = 1;
  for (const auto& g : grids) total *= g.size();
  Eigen::ArrayXcd values(total);
  std::vector<Eigen::Index> index(grids.size(), 0);
  std::vector<double> coords(grids.size());
  for (Eigen::Index flat = 0; flat < total; ++flat) {
    Eigen::Index rest = flat;
    for (std::size_t a = grids.size(); a-- > 0;) {
      index[a] = rest % grids[a].size();
      rest /= grids[a].size();
      coords[a] = grids[a].node(index[a]);
    }
    values[flat] = fn(coords);
  }
  return Field(std::move(grids), std::move(values), std::move(axis_names));
}

Field zeros_like(const Field& u) { return u.with_values(Eigen::ArrayXcd::Zero(u.size())); }

Field tensor_product(const Field& f, const Field& g) {
  if (f.rank() != 1 || g.rank() != 1) throw InvalidArgument("tensor_product expects two rank-1 fields");
  const Eigen::Index n = f.size();
  const Eigen::Index m = g.size();
  Eigen::ArrayXcd values(n * m);
  for (Eigen::Index j = 0; j < n; ++j) values.segment(j * m, m) = f.values()[j] * g.values();
  std::vector<std::string> names{f.axis_names()[0], g.axis_names()[0]};
  if (names[0] == names[1]) names = default_names(2);
  return Field({f.grid(0), g.grid(0)}, std::move(values), std::move(names));
}

double lp_norm(const Field& u, const Exponent& r) {
  return weighted_norm(u.values().abs(), u.quadrature_weights(), r);
}

double mixed_norm(const Field& u, const MixedNormSpec& spec) {
  if (u.rank() != 2) throw InvalidArgument("mixed_norm expects a rank-2 field");
  if (spec.axes.size() != 2) throw InvalidArgument("mixed norm spec must list both axes");
  const int inner = u.axis_index(spec.axes[0].first);
  const int outer = u.axis_index(spec.axes[1].first);
  if (inner == outer) throw InvalidArgument("mixed norm spec lists an axis twice");

  const Eigen::Index n_inner = u.shape()[static_cast<std::size_t>(inner)];
  const Eigen::Index n_outer = u.shape()[static_cast<std::size_t>(outer)];
  const Eigen::Index s_inner = axis_stride(u.shape(), inner);
  const Eigen::Index s_outer = axis_stride(u.shape(), outer);
  const Eigen::ArrayXd w_inner = u.grid(inner).weights();
  const Eigen::ArrayXd w_outer = u.grid(outer).weights();
  const Eigen::ArrayXd modulus = u.values().abs();

  Eigen::ArrayXd partial(n_outer);
  Eigen::ArrayXd line(n_inner);
  for (Eigen::Index k = 0; k < n_outer; ++k) {
    for (Eigen::Index j = 0; j < n_inner; ++j) line[j] = modulus[k * s_outer + j * s_inner];
    partial[k] = weighted_norm(line, w_inner, spec.axes[0].second);
  }
  return weighted_norm(partial, w_outer, spec.axes[1].second);
}

Field difference(const Field& u, const Field& v) {
  if (u.grids() != v.grids()) throw InvalidArgument("fields live on different grids");
  return u.with_values(u.values() - v.values());
}

}  // namespace dispersia
