#include "repsim/kernels.hpp"

#include "kernels_detail.hpp"

namespace repsim::kernels {
namespace {

using detail::Ops;

const Ops* best_ops() {
#if defined(__x86_64__) || defined(__i386__)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return &detail::avx2_ops;
#endif
  return &detail::scalar_ops;
}

const Ops*& active_ops() {
  static const Ops* active = best_ops();
  return active;
}

const Ops* ops_for(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return &detail::scalar_ops;
    case Isa::avx2:
#if defined(__x86_64__) || defined(__i386__)
      return &detail::avx2_ops;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

}  // namespace

Isa active_isa() {
  return active_ops() == &detail::scalar_ops ? Isa::scalar : Isa::avx2;
}

bool isa_supported(Isa isa) {
  if (isa == Isa::scalar) return true;
  const Ops* o = ops_for(isa);
  return o != nullptr && o == best_ops();
}

bool set_isa(Isa isa) {
  if (!isa_supported(isa)) return false;
  active_ops() = ops_for(isa);
  return true;
}

void reset_isa() { active_ops() = best_ops(); }

double dot(const double* a, const double* b, std::size_t n) {
  return active_ops()->dot(a, b, n);
}

double norm_sq(const double* a, std::size_t n) {
  return active_ops()->norm_sq(a, n);
}

double sq_dist(const double* a, const double* b, std::size_t n) {
  return active_ops()->sq_dist(a, b, n);
}

void accumulate(double* acc, const double* x, std::size_t n) {
  active_ops()->accumulate(acc, x, n);
}

void nearest_center_2d(const double* px, const double* py, std::size_t n,
                       const double* cx, const double* cy, std::size_t k,
                       double* out_d2, std::int32_t* out_idx) {
  active_ops()->nearest_center_2d(px, py, n, cx, cy, k, out_d2, out_idx);
}

}  // namespace repsim::kernels
