#include "repsim/metrics.hpp"

#include <cmath>

#include "repsim/kernels.hpp"

namespace repsim {

RequesterSet requester_set(const Topology& topo,
                           const std::vector<NodeId>& online_ids) {
  RequesterSet req;
  req.ids = online_ids;
  req.px.reserve(req.ids.size());
  req.py.reserve(req.ids.size());
  for (NodeId id : req.ids) {
    req.px.push_back(topo.x[id]);
    req.py.push_back(topo.y[id]);
  }
  return req;
}

OwnerSlotMetrics owner_slot_metrics(const Topology& topo,
                                    const std::vector<NodeState>& nodes,
                                    const std::vector<std::uint8_t>& online,
                                    const RequesterSet& req,
                                    const std::vector<NodeId>& replicas) {
  OwnerSlotMetrics out;
  for (NodeId r : replicas) {
    if (online[r]) out.replica_ids.push_back(r);
  }
  out.online_replicas = static_cast<std::uint32_t>(out.replica_ids.size());
  const std::size_t n_req = req.ids.size();
  if (out.replica_ids.empty()) {
    out.unavailable = static_cast<std::uint32_t>(n_req);
    return out;
  }

  std::vector<double> cx, cy;
  cx.reserve(out.replica_ids.size());
  cy.reserve(out.replica_ids.size());
  for (NodeId r : out.replica_ids) {
    cx.push_back(topo.x[r]);
    cy.push_back(topo.y[r]);
  }
  std::vector<double> d2(n_req);
  std::vector<std::int32_t> idx(n_req);
  kernels::nearest_center_2d(req.px.data(), req.py.data(), n_req, cx.data(),
                             cy.data(), cx.size(), d2.data(), idx.data());

  out.mapped = static_cast<std::uint32_t>(n_req);
  out.replica_load.assign(out.replica_ids.size(), 0);
  double delay_sum = 0.0;
  for (std::size_t i = 0; i < n_req; ++i) {
    out.replica_load[idx[i]] += 1;
    delay_sum += std::sqrt(d2[i]) * topo.rtt_scale_ms;
  }
  // Mean over requesters of replica_bw / replica_load telescopes to the sum
  // of loaded replicas' bandwidths over the requester count.
  double bw_sum = 0.0;
  for (std::size_t k = 0; k < out.replica_ids.size(); ++k) {
    if (out.replica_load[k] > 0) bw_sum += nodes[out.replica_ids[k]].bandwidth_kbps;
  }
  out.avg_bw_kbps = bw_sum / double(n_req);
  out.avg_delay_ms = delay_sum / double(n_req);
  return out;
}

std::optional<NodeId> closest_online_replica(const Topology& topo,
                                             const std::vector<std::uint8_t>& online,
                                             NodeId requester,
                                             const std::vector<NodeId>& replicas) {
  // Compared on squared distance: monotone in RTT and identical to what the
  // batch kernel compares, so the two paths can never disagree.
  std::optional<NodeId> best;
  double best_d2 = 0.0;
  for (NodeId r : replicas) {
    if (!online[r]) continue;
    const double dx = topo.x[requester] - topo.x[r];
    const double dy = topo.y[requester] - topo.y[r];
    const double d2 = dx * dx + dy * dy;
    if (!best || d2 < best_d2 || (d2 == best_d2 && r < *best)) {
      best = r;
      best_d2 = d2;
    }
  }
  return best;
}

}  // namespace repsim
