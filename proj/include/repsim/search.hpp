#pragma once

#include <optional>
#include <vector>

#include "repsim/rng.hpp"
#include "repsim/world.hpp"

namespace repsim {

// Online, storage-free nodes of `region` whose virtual id equals vrep,
// excluding flagged ones, in ascending numerical-id order.
std::vector<NodeId> eligible_in_vnode(const SimState& world, RegionId region,
                                      std::uint32_t vrep,
                                      const std::vector<std::uint8_t>& excluded);

// Bounded prefix search: visit at most alpha of the eligible candidates in
// numerical-id ring order starting from an rng-chosen entry and return the
// one with maximum utility score (ties -> lowest numerical id). none when no
// candidate is eligible. Consumes rng only when candidates exist.
std::optional<NodeId> search_for_utility(const SimState& world,
                                         std::uint32_t vrep, RegionId region,
                                         std::uint32_t alpha, RngStream& rng,
                                         const std::vector<std::uint8_t>& excluded);

// Same candidate walk, but takes the entry point itself (a uniform eligible
// candidate) -- the locality-only mapping used by the glaras stand-in.
std::optional<NodeId> first_eligible(const SimState& world, std::uint32_t vrep,
                                     RegionId region, RngStream& rng,
                                     const std::vector<std::uint8_t>& excluded);

// Fallback when a virtual replica has no eligible prefix match: probe the
// region's online storage-free pool. With use_utility, alpha probes and the
// best score wins (ties -> lowest numerical id); otherwise a single probe.
std::optional<NodeId> region_fallback(const SimState& world, RegionId region,
                                      std::uint32_t alpha, RngStream& rng,
                                      const std::vector<std::uint8_t>& excluded,
                                      bool use_utility);

}  // namespace repsim
