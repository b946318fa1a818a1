#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops: scalar reference implementations plus AVX2
// variants picked at runtime (cpuid). The scalar versions are the semantic
// ground truth; the vector ones are equivalence-tested against them.
//
// Bit-exactness contract:
//   - accumulate and nearest_center_2d produce identical bits on every ISA
//     (element-wise ops, no reassociation; built with -ffp-contract=off).
//   - dot / norm_sq / sq_dist reassociate the reduction, so cross-ISA results
//     agree only to rounding (tests use a scaled 1e-12 tolerance).

namespace repsim::kernels {

enum class Isa { scalar, avx2 };

Isa active_isa();
bool isa_supported(Isa isa);
// Force an ISA (tests). Returns false (and leaves the selection unchanged)
// if the CPU cannot run it.
bool set_isa(Isa isa);
void reset_isa();  // back to best supported

double dot(const double* a, const double* b, std::size_t n);
double norm_sq(const double* a, std::size_t n);
double sq_dist(const double* a, const double* b, std::size_t n);

// acc[i] += x[i]
void accumulate(double* acc, const double* x, std::size_t n);

// For each point, squared euclidean distance to -- and index of -- the
// nearest of k centers. Ties keep the lowest center index. k >= 1.
void nearest_center_2d(const double* px, const double* py, std::size_t n,
                       const double* cx, const double* cy, std::size_t k,
                       double* out_d2, std::int32_t* out_idx);

}  // namespace repsim::kernels
