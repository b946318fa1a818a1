#pragma once

#include "repsim/plan.hpp"
#include "repsim/rng.hpp"
#include "repsim/world.hpp"

namespace repsim {

struct PlaceConfig {
  std::uint32_t alpha = 3;
  int degree = 1;
  bool exclude_owner = false;  // forbid the owner as its own replica
};

// Utility/locality-aware placement: split the degree across regions, weight
// poorly covered slots, solve each region's placement exactly, map virtual
// replicas to original nodes by bounded search. Mutates rp_load of chosen
// replicas, publishes the replica set, and logs 1 table read, `degree`
// searches and 1 publish.
ReplicationPlan pyramid_replicate(SimState& world, NodeId owner,
                                  const PlaceConfig& cfg, RngStream& rng);

// Locality-only stand-in: same pipeline with utilities and slot weights
// flattened to ones, and the virtual->original mapping picking a uniform
// eligible candidate.
ReplicationPlan glaras_replicate(SimState& world, NodeId owner,
                                 const PlaceConfig& cfg, RngStream& rng);

// Knowledge-base baselines. All check onlineness and storage against the
// world at selection time, but score nodes by the utility vectors the owner
// learned (its KnowledgeBase), not current ones.
ReplicationPlan randomized_replicate(SimState& world, NodeId owner,
                                     const PlaceConfig& cfg, RngStream& rng);
ReplicationPlan power_of_choice_replicate(SimState& world, NodeId owner,
                                          const PlaceConfig& cfg,
                                          RngStream& rng);
ReplicationPlan cluster_based_replicate(SimState& world, NodeId owner,
                                        const PlaceConfig& cfg, RngStream& rng);
ReplicationPlan correlation_based_replicate(SimState& world, NodeId owner,
                                            const PlaceConfig& cfg);

// Dispatch by strategy enum; the rng stream should be derived per
// (seed, strategy, degree, owner) so placements are order-independent.
ReplicationPlan place_replicas(SimState& world, NodeId owner, Strategy s,
                               const PlaceConfig& cfg, RngStream& rng);

// Simulated background searches: each samples a path of distinct online
// nodes; every owner on a path records the other members' utility vectors.
// Logs one search cost per search.
void simulate_piggyback(SimState& world, std::uint64_t searches,
                        RngStream& rng);

// Searches per slot when the configured budget is 0.
std::uint64_t default_piggyback_budget(std::uint32_t n);

}  // namespace repsim
