#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "repsim/node_state.hpp"
#include "repsim/topology.hpp"

namespace repsim {

// Coordinates of the online nodes at one slot -- every online node is a data
// requester. Built once per slot and shared across owners and strategies.
struct RequesterSet {
  std::vector<NodeId> ids;  // ascending
  std::vector<double> px, py;
};

RequesterSet requester_set(const Topology& topo,
                           const std::vector<NodeId>& online_ids);

// One owner's per-slot measurements.
struct OwnerSlotMetrics {
  std::uint32_t online_replicas = 0;
  std::uint32_t mapped = 0;       // requesters with an online replica
  std::uint32_t unavailable = 0;  // requesters without one
  double avg_bw_kbps = 0.0;       // defined iff mapped > 0
  double avg_delay_ms = 0.0;      // defined iff mapped > 0
  std::vector<NodeId> replica_ids;          // online replicas, ascending
  std::vector<std::uint32_t> replica_load;  // requesters mapped to each
};

// Map each requester to its minimum-RTT online replica (ties -> lowest
// replica id). Bandwidth per requester = replica bandwidth / replica load;
// delay per requester = RTT to its replica. `replicas` must be ascending.
OwnerSlotMetrics owner_slot_metrics(const Topology& topo,
                                    const std::vector<NodeState>& nodes,
                                    const std::vector<std::uint8_t>& online,
                                    const RequesterSet& req,
                                    const std::vector<NodeId>& replicas);

// Single-requester form of the mapping rule (none when no replica is online).
std::optional<NodeId> closest_online_replica(const Topology& topo,
                                             const std::vector<std::uint8_t>& online,
                                             NodeId requester,
                                             const std::vector<NodeId>& replicas);

}  // namespace repsim
