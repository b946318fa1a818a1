#include "repsim/search.hpp"

#include <algorithm>

namespace repsim {

std::vector<NodeId> eligible_in_vnode(const SimState& world, RegionId region,
                                      std::uint32_t vrep,
                                      const std::vector<std::uint8_t>& excluded) {
  const Topology& topo = *world.topo;
  std::vector<NodeId> out;
  for (NodeId id : world.online_ids) {
    if (topo.region[id] != region) continue;
    if (topo.virtual_of(id) != vrep) continue;
    if (!world.nodes[id].storage_free()) continue;
    if (excluded[id]) continue;
    out.push_back(id);
  }
  std::sort(out.begin(), out.end(), [&](NodeId a, NodeId b) {
    return topo.numerical_id[a] < topo.numerical_id[b];
  });
  return out;
}

namespace {

// Pool of fallback candidates (any virtual id), ascending numerical order.
std::vector<NodeId> eligible_in_region(const SimState& world, RegionId region,
                                       const std::vector<std::uint8_t>& excluded) {
  const Topology& topo = *world.topo;
  std::vector<NodeId> out;
  for (NodeId id : world.online_ids) {
    if (topo.region[id] != region) continue;
    if (!world.nodes[id].storage_free()) continue;
    if (excluded[id]) continue;
    out.push_back(id);
  }
  std::sort(out.begin(), out.end(), [&](NodeId a, NodeId b) {
    return topo.numerical_id[a] < topo.numerical_id[b];
  });
  return out;
}

NodeId best_of_walk(const SimState& world, const std::vector<NodeId>& cands,
                    std::size_t entry, std::size_t visits) {
  const Topology& topo = *world.topo;
  NodeId best = cands[entry];
  double best_score = utility_score(world.nodes[best]);
  for (std::size_t k = 1; k < visits; ++k) {
    const NodeId id = cands[(entry + k) % cands.size()];
    const double score = utility_score(world.nodes[id]);
    if (score > best_score ||
        (score == best_score &&
         topo.numerical_id[id] < topo.numerical_id[best])) {
      best = id;
      best_score = score;
    }
  }
  return best;
}

}  // namespace

std::optional<NodeId> search_for_utility(const SimState& world,
                                         std::uint32_t vrep, RegionId region,
                                         std::uint32_t alpha, RngStream& rng,
                                         const std::vector<std::uint8_t>& excluded) {
  const std::vector<NodeId> cands = eligible_in_vnode(world, region, vrep, excluded);
  if (cands.empty()) return std::nullopt;
  const std::size_t entry = rng.uniform_int(cands.size());
  const std::size_t visits = std::min<std::size_t>(alpha, cands.size());
  return best_of_walk(world, cands, entry, visits);
}

std::optional<NodeId> first_eligible(const SimState& world, std::uint32_t vrep,
                                     RegionId region, RngStream& rng,
                                     const std::vector<std::uint8_t>& excluded) {
  const std::vector<NodeId> cands = eligible_in_vnode(world, region, vrep, excluded);
  if (cands.empty()) return std::nullopt;
  return cands[rng.uniform_int(cands.size())];
}

std::optional<NodeId> region_fallback(const SimState& world, RegionId region,
                                      std::uint32_t alpha, RngStream& rng,
                                      const std::vector<std::uint8_t>& excluded,
                                      bool use_utility) {
  const Topology& topo = *world.topo;
  const std::vector<NodeId> pool = eligible_in_region(world, region, excluded);
  if (pool.empty()) return std::nullopt;
  if (!use_utility) return pool[rng.uniform_int(pool.size())];
  NodeId best = pool[rng.uniform_int(pool.size())];
  double best_score = utility_score(world.nodes[best]);
  for (std::uint32_t k = 1; k < alpha; ++k) {
    const NodeId id = pool[rng.uniform_int(pool.size())];
    const double score = utility_score(world.nodes[id]);
    if (score > best_score ||
        (score == best_score &&
         topo.numerical_id[id] < topo.numerical_id[best])) {
      best = id;
      best_score = score;
    }
  }
  return best;
}

}  // namespace repsim
