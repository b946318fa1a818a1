#pragma once

#include <cstdint>
#include <vector>

#include "repsim/rng.hpp"

namespace repsim {

// Weibull on/off churn. A trace alternates offline gaps (inter-arrival
// distribution, region-dependent) with online sessions (global distribution),
// starting offline at t = 0. Sessions are half-open [start, end) hours,
// truncated to the horizon.

double weibull_icdf(double shape, double scale, double u);
double weibull_scale_for_mean(double mean, double shape);
double sample_weibull(RngStream& rng, double shape, double scale);
double sample_exponential(RngStream& rng, double mean);

struct SessionParams {
  double mean_hours = 2.7;
  double shape = 0.6;
};

// Per-region inter-arrival parameters. Factors are drawn uniform in
// [factor_min, factor_max] and then normalized by their population-weighted
// mean, so the node-weighted global inter-arrival mean stays exact.
struct RegionChurn {
  std::vector<double> interarrival_mean_hours;
  std::vector<double> interarrival_shape;
};

RegionChurn derive_region_churn(RngStream& rng,
                                const std::vector<std::uint32_t>& populations,
                                double global_mean_hours, double factor_min,
                                double factor_max, double shape_min,
                                double shape_max);

struct ChurnTrace {
  std::vector<double> start, end;  // parallel, sorted, non-overlapping
  double horizon_hours = 0;
};

ChurnTrace make_trace(RngStream& rng, const SessionParams& session,
                      double interarrival_mean, double interarrival_shape,
                      double horizon_hours);

bool is_online(const ChurnTrace& trace, double t);
double online_hours_in(const ChurnTrace& trace, double t0, double t1);

// Fraction of slot `slot` (0-based within the cycle, ts_hours wide) the node
// was online, averaged over the first `cycles_elapsed` complete cycles.
double availability_probability(const ChurnTrace& trace, std::uint32_t slot,
                                std::uint32_t slots_per_cycle, double ts_hours,
                                std::uint32_t cycles_elapsed);

}  // namespace repsim
