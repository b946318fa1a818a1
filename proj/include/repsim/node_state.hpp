#pragma once

#include <cstdint>
#include <vector>

#include "repsim/churn.hpp"
#include "repsim/rng.hpp"

namespace repsim {

struct ResourceParams {
  double bandwidth_mean_kbps = 2000.0;
  double bandwidth_cap_factor = 10.0;  // samples capped at cap * mean
  int storage_min = 1;
  int storage_max = 3;
};

// Per-node dynamic state. The utility vector uv[t] = p[t] * bw_norm /
// (rp_load + 1): per-slot availability, scaled by normalized bandwidth,
// discounted by replication duties already held. It is recomputed at the
// node's first online slot of each cycle and refreshed in place whenever
// rp_load changes.
struct NodeState {
  double bandwidth_kbps = 0.0;
  double bandwidth_norm = 0.0;
  int capacity = 0;
  int rp_load = 0;
  std::vector<double> avail;      // p[t], cached at last recompute
  std::vector<double> uv;         // empty until the first recompute
  std::int64_t uv_cycle = -1;     // cycle uv was computed for
  std::int64_t last_report = -1;  // last cycle a report was sent

  bool storage_free() const { return rp_load < capacity; }
};

// Sample bandwidths (capped exponential, then normalized by the world max)
// and storage capacities (uniform integers in [min, max]).
void sample_node_resources(std::vector<NodeState>& nodes, RngStream& bw_rng,
                           RngStream& storage_rng,
                           const ResourceParams& params);

// Recompute avail + uv from the trace over the first `cycles_elapsed` cycles.
void recompute_uv(NodeState& node, const ChurnTrace& trace,
                  std::uint32_t slots_per_cycle, double ts_hours,
                  std::uint32_t cycles_elapsed);

// Refresh uv from cached avail after an rp_load change.
void refresh_uv(NodeState& node);

// L2 norm of the utility vector; 0 for a node that never computed one.
double utility_score(const NodeState& node);
double uv_norm(const std::vector<double>& uv);

}  // namespace repsim
