#include "repsim/churn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace repsim {

double weibull_icdf(double shape, double scale, double u) {
  if (u <= 0.0) return 0.0;
  return scale * std::pow(-std::log1p(-u), 1.0 / shape);
}

double weibull_scale_for_mean(double mean, double shape) {
  return mean / std::tgamma(1.0 + 1.0 / shape);
}

double sample_weibull(RngStream& rng, double shape, double scale) {
  return weibull_icdf(shape, scale, rng.uniform());
}

double sample_exponential(RngStream& rng, double mean) {
  return -mean * std::log1p(-rng.uniform());
}

RegionChurn derive_region_churn(RngStream& rng,
                                const std::vector<std::uint32_t>& populations,
                                double global_mean_hours, double factor_min,
                                double factor_max, double shape_min,
                                double shape_max) {
  const std::size_t regions = populations.size();
  std::vector<double> factor(regions);
  RegionChurn rc;
  rc.interarrival_shape.resize(regions);
  for (std::size_t l = 0; l < regions; ++l)
    factor[l] = rng.uniform_in(factor_min, factor_max);
  for (std::size_t l = 0; l < regions; ++l)
    rc.interarrival_shape[l] = rng.uniform_in(shape_min, shape_max);

  double weighted = 0.0, total = 0.0;
  for (std::size_t l = 0; l < regions; ++l) {
    weighted += double(populations[l]) * factor[l];
    total += double(populations[l]);
  }
  const double fbar = total > 0 ? weighted / total : 1.0;
  rc.interarrival_mean_hours.resize(regions);
  for (std::size_t l = 0; l < regions; ++l)
    rc.interarrival_mean_hours[l] = global_mean_hours * factor[l] / fbar;
  return rc;
}

ChurnTrace make_trace(RngStream& rng, const SessionParams& session,
                      double interarrival_mean, double interarrival_shape,
                      double horizon_hours) {
  if (horizon_hours <= 0) throw std::invalid_argument("trace horizon <= 0");
  const double ia_scale =
      weibull_scale_for_mean(interarrival_mean, interarrival_shape);
  const double s_scale =
      weibull_scale_for_mean(session.mean_hours, session.shape);
  ChurnTrace tr;
  tr.horizon_hours = horizon_hours;
  double t = 0.0;
  while (true) {
    t += sample_weibull(rng, interarrival_shape, ia_scale);
    if (t >= horizon_hours) break;
    const double s = sample_weibull(rng, session.shape, s_scale);
    const double end = std::min(t + s, horizon_hours);
    if (end > t) {
      tr.start.push_back(t);
      tr.end.push_back(end);
    }
    t += s;
    if (t >= horizon_hours) break;
  }
  return tr;
}

bool is_online(const ChurnTrace& trace, double t) {
  if (t < 0 || t >= trace.horizon_hours)
    throw std::invalid_argument("is_online: time outside horizon");
  auto it = std::upper_bound(trace.start.begin(), trace.start.end(), t);
  if (it == trace.start.begin()) return false;
  const std::size_t i = std::size_t(it - trace.start.begin()) - 1;
  return trace.end[i] > t;
}

double online_hours_in(const ChurnTrace& trace, double t0, double t1) {
  if (t1 <= t0) return 0.0;
  // first session that could overlap: last with start <= t0, or the next one
  auto it = std::upper_bound(trace.start.begin(), trace.start.end(), t0);
  std::size_t i = it == trace.start.begin()
                      ? 0
                      : std::size_t(it - trace.start.begin()) - 1;
  double sum = 0.0;
  for (; i < trace.start.size() && trace.start[i] < t1; ++i) {
    const double lo = std::max(trace.start[i], t0);
    const double hi = std::min(trace.end[i], t1);
    if (hi > lo) sum += hi - lo;
  }
  return sum;
}

double availability_probability(const ChurnTrace& trace, std::uint32_t slot,
                                std::uint32_t slots_per_cycle, double ts_hours,
                                std::uint32_t cycles_elapsed) {
  if (cycles_elapsed == 0)
    throw std::invalid_argument("availability needs >= 1 elapsed cycle");
  if (slot >= slots_per_cycle)
    throw std::invalid_argument("slot outside cycle");
  const double cycle_hours = slots_per_cycle * ts_hours;
  double sum = 0.0;
  for (std::uint32_t c = 0; c < cycles_elapsed; ++c) {
    const double t0 = c * cycle_hours + slot * ts_hours;
    sum += online_hours_in(trace, t0, t0 + ts_hours);
  }
  return sum / (double(cycles_elapsed) * ts_hours);
}

}  // namespace repsim
