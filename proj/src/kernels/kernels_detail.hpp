#pragma once

#include <cstddef>
#include <cstdint>

namespace repsim::kernels::detail {

struct Ops {
  double (*dot)(const double*, const double*, std::size_t);
  double (*norm_sq)(const double*, std::size_t);
  double (*sq_dist)(const double*, const double*, std::size_t);
  void (*accumulate)(double*, const double*, std::size_t);
  void (*nearest_center_2d)(const double*, const double*, std::size_t,
                            const double*, const double*, std::size_t,
                            double*, std::int32_t*);
};

extern const Ops scalar_ops;
#if defined(__x86_64__) || defined(__i386__)
extern const Ops avx2_ops;
#endif

}  // namespace repsim::kernels::detail
