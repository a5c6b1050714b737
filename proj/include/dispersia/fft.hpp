#pragma once

#include <Eigen/Core>

#include "dispersia/field.hpp"

namespace dispersia::fft {

enum class Direction { forward, backward };

/// In-place unnormalized complex DFT along one axis of a row-major array.
/// Forward uses exp(-2*pi*i*jk/n); backward uses exp(+2*pi*i*jk/n).
void transform_axis(Eigen::ArrayXcd& data, const Shape& shape, int axis, Direction dir);

/// In-place DST-II along one axis (FFTW RODFT10), real and imaginary parts separately:
/// y_k = 2 * sum_j x_j sin(pi (j + 1/2) (k + 1) / n).
void dst2_axis(Eigen::ArrayXcd& data, const Shape& shape, int axis);

/// In-place DST-III along one axis (FFTW RODFT01), the unnormalized inverse of dst2_axis:
/// dst3(dst2(x)) = 2 n x.
void dst3_axis(Eigen::ArrayXcd& data, const Shape& shape, int axis);

/// Angular wavenumbers 2*pi*k/L of a torus in FFT order (k = 0, 1, ..., -1).
Eigen::ArrayXd wavenumbers(const Grid1D& grid);

/// Multiplies every line along `axis` elementwise by `factor` (length shape[axis]).
void scale_axis(Eigen::ArrayXcd& data, const Shape& shape, int axis, const Eigen::ArrayXcd& factor);
void scale_axis(Eigen::ArrayXcd& data, const Shape& shape, int axis, const Eigen::ArrayXd& factor);

}  // namespace dispersia::fft
