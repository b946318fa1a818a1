#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "repsim/plan.hpp"

namespace repsim {

// Streaming mean/stddev (Welford accumulation, Chan merge). stddev is the
// sample deviation (n - 1 denominator), 0 for fewer than two samples.
struct MetricMoments {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x);
  void merge(const MetricMoments& o);
  double stddev() const;
};

struct GroupMoments {
  MetricMoments bw;
  MetricMoments delay;
};

// Keyed (strategy, degree); map order is the canonical emission order.
using SummaryMap = std::map<std::pair<int, std::uint32_t>, GroupMoments>;

void merge_summary(SummaryMap& into, const SummaryMap& from);

struct PerSlotRow {
  std::uint64_t seed = 0;
  Strategy strategy = Strategy::pyramid;
  std::uint32_t degree = 0;
  std::int64_t slot = 0;
  NodeId owner = 0;
  bool has_avg = false;  // false -> empty avg fields (no online replica)
  double avg_bw_kbps = 0.0;
  double avg_delay_ms = 0.0;
  std::uint32_t unavailable = 0;
  std::uint32_t online_replicas = 0;
};

// Fixed %.10g rendering: deterministic bytes for identical doubles.
std::string format_double(double v);

void write_perslot_csv(const std::vector<PerSlotRow>& rows, std::ostream& out);
void write_summary_csv(const SummaryMap& summary, std::ostream& out);
void write_summary_json(const SummaryMap& summary, std::ostream& out);

// Re-aggregation oracle for `report`: fold one per-slot CSV into a summary.
// Throws ConfigError on malformed rows.
void aggregate_perslot_csv(std::istream& in, SummaryMap& into);

}  // namespace repsim
