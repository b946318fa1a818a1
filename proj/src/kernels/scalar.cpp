#include "kernels_detail.hpp"

namespace repsim::kernels::detail {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double norm_sq_scalar(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
  return s;
}

double sq_dist_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void accumulate_scalar(double* acc, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += x[i];
}

void nearest_center_2d_scalar(const double* px, const double* py,
                              std::size_t n, const double* cx,
                              const double* cy, std::size_t k, double* out_d2,
                              std::int32_t* out_idx) {
  for (std::size_t i = 0; i < n; ++i) {
    double dx = px[i] - cx[0];
    double dy = py[i] - cy[0];
    double best = dx * dx + dy * dy;
    std::int32_t idx = 0;
    for (std::size_t c = 1; c < k; ++c) {
      dx = px[i] - cx[c];
      dy = py[i] - cy[c];
      const double d2 = dx * dx + dy * dy;
      if (d2 < best) {  // strict: ties keep the lower index
        best = d2;
        idx = static_cast<std::int32_t>(c);
      }
    }
    out_d2[i] = best;
    out_idx[i] = idx;
  }
}

}  // namespace

const Ops scalar_ops = {dot_scalar, norm_sq_scalar, sq_dist_scalar,
                        accumulate_scalar, nearest_center_2d_scalar};

}  // namespace repsim::kernels::detail
