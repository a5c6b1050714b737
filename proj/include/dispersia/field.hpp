#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "dispersia/exponent.hpp"
#include "dispersia/grid.hpp"

namespace dispersia {

using Complex = std::complex<double>;
using Shape = std::vector<Eigen::Index>;

/// Complex samples over a tensor product of one to three grids.
///
/// Values are stored flat in row-major order: the last axis varies fastest.
/// A Field never holds NaN or infinite samples; construction checks this.
class Field {
 public:
  static constexpr int kMaxRank = 3;

  Field(std::vector<Grid1D> grids, Eigen::ArrayXcd values, std::vector<std::string> axis_names = {});

  int rank() const { return static_cast<int>(grids_.size()); }
  const std::vector<Grid1D>& grids() const { return grids_; }
  const Grid1D& grid(int axis) const { return grids_.at(static_cast<std::size_t>(axis)); }
  const std::vector<std::string>& axis_names() const { return axis_names_; }
  int axis_index(std::string_view name) const;

  const Shape& shape() const { return shape_; }
  Eigen::Index size() const { return values_.size(); }
  const Eigen::ArrayXcd& values() const { return values_; }

  Complex at(std::span<const Eigen::Index> index) const;
  Eigen::Index flat_index(std::span<const Eigen::Index> index) const;

  /// Same grids and axis names, new samples.
  Field with_values(Eigen::ArrayXcd values) const;
  /// Flattened product of the per-axis quadrature weights.
  Eigen::ArrayXd quadrature_weights() const;

 private:
  std::vector<Grid1D> grids_;
  std::vector<std::string> axis_names_;
  Shape shape_;
  Eigen::ArrayXcd values_;
};

/// Samples `fn` at every node of the product grid. `fn` receives node coordinates in axis order.
Field sample_field(std::vector<Grid1D> grids, const std::function<Complex(std::span<const double>)>& fn,
                   std::vector<std::string> axis_names = {});

Field zeros_like(const Field& u);

/// Separable product (f ⊗ g)[j, k] = f[j] * g[k].
Field tensor_product(const Field& f, const Field& g);

/// Quadrature-weighted L^r norm; r = ∞ gives the maximum modulus.
double lp_norm(const Field& u, const Exponent& r);

/// Axis norms listed innermost first: the first pair is evaluated first.
struct MixedNormSpec {
  std::vector<std::pair<std::string, Exponent>> axes;
};

double mixed_norm(const Field& u, const MixedNormSpec& spec);

/// u - v after checking that both live on the same grids.
Field difference(const Field& u, const Field& v);

/// Product of the extents in `shape` strictly after `axis`.
Eigen::Index axis_stride(const Shape& shape, int axis);

}  // namespace dispersia
