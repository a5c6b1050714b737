#include "dispersia/fft.hpp"

#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "dispersia/errors.hpp"

namespace dispersia::fft {

namespace {

// The FFTW planner is not reentrant; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// FFTW_UNALIGNED keeps the chosen algorithm independent of where the buffer happens
// to land in memory, so repeated runs round identically.
constexpr unsigned kPlanFlags = FFTW_ESTIMATE | FFTW_UNALIGNED;

struct AxisLayout {
  int n;
  int stride;
  int outer;
};

AxisLayout layout(const Eigen::ArrayXcd& data, const Shape& shape, int axis) {
  if (axis < 0 || axis >= static_cast<int>(shape.size())) throw InvalidArgument("axis out of range");
  Eigen::Index total = 1;
  for (auto e : shape) total *= e;
  if (total != data.size()) throw InvalidArgument("array size does not match shape");
  const auto n = shape[static_cast<std::size_t>(axis)];
  const auto stride = axis_stride(shape, axis);
  return {static_cast<int>(n), static_cast<int>(stride), static_cast<int>(total / (n * stride))};
}

class Plan {
 public:
  explicit Plan(fftw_plan p) : plan_(p) {
    if (plan_ == nullptr) throw std::runtime_error("FFTW failed to create a plan");
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

void real_to_real(Eigen::ArrayXcd& data, const Shape& shape, int axis, fftw_r2r_kind kind) {
  const auto l = layout(data, shape, axis);
  // View the complex buffer as interleaved doubles; re and im form a third batch dimension.
  auto* raw = reinterpret_cast<double*>(data.data());
  fftw_iodim dim{l.n, 2 * l.stride, 2 * l.stride};
  fftw_iodim batch[3] = {{l.outer, 2 * l.n * l.stride, 2 * l.n * l.stride}, {l.stride, 2, 2}, {2, 1, 1}};
  fftw_plan p;
  {
    std::lock_guard lock(planner_mutex());
    p = fftw_plan_guru_r2r(1, &dim, 3, batch, raw, raw, &kind, kPlanFlags);
  }
  Plan(p).execute();
}

template <typename Factor>
void scale_axis_impl(Eigen::ArrayXcd& data, const Shape& shape, int axis, const Factor& factor) {
  const auto l = layout(data, shape, axis);
  if (factor.size() != l.n) throw InvalidArgument("axis factor length mismatch");
  const Eigen::Index block = static_cast<Eigen::Index>(l.n) * l.stride;
  for (Eigen::Index o = 0; o < l.outer; ++o) {
    for (Eigen::Index j = 0; j < l.n; ++j) {
      data.segment(o * block + j * l.stride, l.stride) *= factor[j];
    }
  }
}

}  // namespace

void transform_axis(Eigen::ArrayXcd& data, const Shape& shape, int axis, Direction dir) {
  const auto l = layout(data, shape, axis);
  auto* raw = reinterpret_cast<fftw_complex*>(data.data());
  fftw_iodim dim{l.n, l.stride, l.stride};
  fftw_iodim batch[2] = {{l.outer, l.n * l.stride, l.n * l.stride}, {l.stride, 1, 1}};
  const int sign = dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;
  fftw_plan p;
  {
    std::lock_guard lock(planner_mutex());
    p = fftw_plan_guru_dft(1, &dim, 2, batch, raw, raw, sign, kPlanFlags);
  }
  Plan(p).execute();
}

void dst2_axis(Eigen::ArrayXcd& data, const Shape& shape, int axis) { real_to_real(data, shape, axis, FFTW_RODFT10); }

void dst3_axis(Eigen::ArrayXcd& data, const Shape& shape, int axis) { real_to_real(data, shape, axis, FFTW_RODFT01); }

Eigen::ArrayXd wavenumbers(const Grid1D& grid) {
  const int n = grid.size();
  Eigen::ArrayXd k(n);
  const double base = 2.0 * std::numbers::pi / grid.length();
  for (int j = 0; j < n; ++j) k[j] = base * (j <= (n - 1) / 2 ? j : j - n);
  return k;
}

void scale_axis(Eigen::ArrayXcd& data, const Shape& shape, int axis, const Eigen::ArrayXcd& factor) {
  scale_axis_impl(data, shape, axis, factor);
}

void scale_axis(Eigen::ArrayXcd& data, const Shape& shape, int axis, const Eigen::ArrayXd& factor) {
  scale_axis_impl(data, shape, axis, factor);
}

}  // namespace dispersia::fft
