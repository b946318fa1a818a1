#include "repsim/node_state.hpp"

#include <algorithm>
#include <cmath>

#include "repsim/kernels.hpp"

namespace repsim {

void sample_node_resources(std::vector<NodeState>& nodes, RngStream& bw_rng,
                           RngStream& storage_rng,
                           const ResourceParams& params) {
  const double cap = params.bandwidth_cap_factor * params.bandwidth_mean_kbps;
  double max_bw = 0.0;
  for (NodeState& n : nodes) {
    n.bandwidth_kbps =
        std::min(sample_exponential(bw_rng, params.bandwidth_mean_kbps), cap);
    max_bw = std::max(max_bw, n.bandwidth_kbps);
  }
  for (NodeState& n : nodes)
    n.bandwidth_norm = max_bw > 0 ? n.bandwidth_kbps / max_bw : 0.0;
  const std::uint64_t span =
      std::uint64_t(params.storage_max - params.storage_min) + 1;
  for (NodeState& n : nodes)
    n.capacity = params.storage_min + int(storage_rng.uniform_int(span));
}

void recompute_uv(NodeState& node, const ChurnTrace& trace,
                  std::uint32_t slots_per_cycle, double ts_hours,
                  std::uint32_t cycles_elapsed) {
  node.avail.resize(slots_per_cycle);
  for (std::uint32_t t = 0; t < slots_per_cycle; ++t)
    node.avail[t] = availability_probability(trace, t, slots_per_cycle,
                                             ts_hours, cycles_elapsed);
  node.uv_cycle = cycles_elapsed;
  refresh_uv(node);
}

void refresh_uv(NodeState& node) {
  if (node.avail.empty()) return;
  node.uv.resize(node.avail.size());
  const double scale = node.bandwidth_norm / double(node.rp_load + 1);
  for (std::size_t t = 0; t < node.avail.size(); ++t)
    node.uv[t] = node.avail[t] * scale;
}

double uv_norm(const std::vector<double>& uv) {
  if (uv.empty()) return 0.0;
  return std::sqrt(kernels::norm_sq(uv.data(), uv.size()));
}

double utility_score(const NodeState& node) { return uv_norm(node.uv); }

}  // namespace repsim
