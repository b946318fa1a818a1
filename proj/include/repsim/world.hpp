#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "repsim/aggregation.hpp"
#include "repsim/churn.hpp"
#include "repsim/node_state.hpp"
#include "repsim/topology.hpp"

namespace repsim {

// What a data owner has learned about other nodes from piggybacked searches.
struct KnowledgeBase {
  struct Entry {
    std::vector<double> uv;
    std::int64_t slot = -1;
  };
  std::vector<NodeId> known;  // first-observation order (stable iteration)
  std::unordered_map<NodeId, Entry> entries;

  void observe(NodeId id, const std::vector<double>& uv, std::int64_t slot);
  const Entry* find(NodeId id) const;
};

struct SimParams {
  std::uint32_t fpti_slots = 24;
  double ts_hours = 1.0;
  double cost_factor = 1.0;
};

// Mutable simulation state. Copyable: strategy evaluation clones the world so
// rp_load effects don't leak across strategies. Topology and traces are
// immutable and shared by reference.
struct SimState {
  const Topology* topo = nullptr;
  const std::vector<ChurnTrace>* traces = nullptr;
  SimParams params;
  std::vector<NodeState> nodes;
  UtilityTable table;
  ReplicaRegistry registry;
  CostLedger ledger;
  std::vector<NodeId> owners;             // ascending
  std::vector<std::int32_t> owner_index;  // node id -> index in owners, or -1
  std::vector<KnowledgeBase> kbs;         // parallel to owners
  std::vector<std::uint8_t> online;       // per node, current slot
  std::vector<NodeId> online_ids;         // ascending
  std::int64_t slot = -1;

  SimState(const Topology& t, const std::vector<ChurnTrace>& tr,
           const SimParams& p, std::vector<NodeId> owner_ids);

  std::int64_t cycle() const { return slot / params.fpti_slots; }
  // Refresh online/online_ids for slot s (sampled at the slot start instant).
  void update_online(std::int64_t s);
};

// FNV-1a over the mutable state (node states, table, registry, ledger,
// knowledge bases, online sets). Used to verify strategy isolation.
std::uint64_t world_hash(const SimState& world);

}  // namespace repsim
