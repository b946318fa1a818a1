#include <algorithm>
#include <stdexcept>

#include "repsim/errors.hpp"
#include "repsim/search.hpp"
#include "repsim/strategies.hpp"

namespace repsim {

namespace {

struct TablePops {
  std::vector<std::uint32_t> populations;  // reporters per region
  std::vector<std::uint32_t> caps;         // populated virtual nodes per region
  std::uint64_t total_reports = 0;
  std::uint32_t total_caps = 0;
};

TablePops table_populations(const TableView& view) {
  TablePops p;
  p.populations.assign(view.regions, 0);
  p.caps.assign(view.regions, 0);
  for (RegionId l = 0; l < view.regions; ++l) {
    for (std::uint32_t v = 0; v < view.vspace; ++v) {
      const std::uint32_t c = view.count(l, v);
      if (c == 0) continue;
      p.populations[l] += c;
      p.caps[l] += 1;
    }
    p.total_reports += p.populations[l];
    p.total_caps += p.caps[l];
  }
  return p;
}

// Shared pyramid/glaras pipeline; locality_only flattens utilities and slot
// weights to ones and maps virtual replicas to a uniform eligible candidate
// instead of the best-utility one.
ReplicationPlan replicate_by_regions(SimState& world, NodeId owner,
                                     const PlaceConfig& cfg, RngStream& rng,
                                     bool locality_only) {
  if (cfg.degree < 1) throw std::invalid_argument("replication degree must be >= 1");
  const std::uint32_t n = world.topo->n;
  const double cf = world.params.cost_factor;
  world.ledger.log(OpClass::read_table, n, cf);
  const TableView view = snapshot(world.table);
  const TablePops pops = table_populations(view);
  if (pops.total_reports == 0) {
    throw PlanError("utility table is empty; nothing has been learned yet");
  }
  if (static_cast<std::uint32_t>(cfg.degree) > pops.total_caps) {
    throw PlanError("replication degree exceeds populated virtual nodes");
  }

  ReplicationPlan plan;
  plan.owner = owner;
  plan.strategy = locality_only ? Strategy::glaras : Strategy::pyramid;
  plan.degree = cfg.degree;

  const std::vector<int> sub = split_degree(cfg.degree, pops.populations, pops.caps);
  for (RegionId l = 0; l < view.regions; ++l) {
    if (sub[l] <= 0) continue;
    std::vector<double> w = locality_only
                                ? std::vector<double>(view.slots, 1.0)
                                : coverage_weights(view, l);
    RwdInstance ins = build_instance(view, l, sub[l], w);
    if (locality_only) {
      for (std::uint16_t i : ins.active) {
        for (std::uint32_t t = 0; t < ins.slots; ++t) ins.ut[i * ins.slots + t] = 1.0;
      }
    }
    RwdSolution sol = solve_rwd(ins);
    for (std::uint16_t i : sol.y) plan.virtual_replicas.emplace_back(l, i);
    plan.regions.push_back(RegionPlan{l, sub[l], std::move(w), std::move(sol)});
  }

  std::vector<std::uint8_t> excluded(n, 0);
  if (cfg.exclude_owner) excluded[owner] = 1;
  for (const auto& [l, vrep] : plan.virtual_replicas) {
    world.ledger.log(OpClass::search, n, cf);
    std::optional<NodeId> found =
        locality_only ? first_eligible(world, vrep, l, rng, excluded)
                      : search_for_utility(world, vrep, l, cfg.alpha, rng, excluded);
    if (!found) {
      found = region_fallback(world, l, cfg.alpha, rng, excluded, !locality_only);
    }
    if (!found) continue;  // replica dropped; counted in the shortfall
    excluded[*found] = 1;
    plan.replicas.push_back(*found);
    NodeState& ns = world.nodes[*found];
    ns.rp_load += 1;
    refresh_uv(ns);
  }
  plan.shortfall = cfg.degree - static_cast<int>(plan.replicas.size());
  std::sort(plan.replicas.begin(), plan.replicas.end());
  if (!plan.replicas.empty()) {
    world.registry.publish(owner, plan.replicas);
    world.ledger.log(OpClass::publish, n, cf);
  }
  return plan;
}

}  // namespace

ReplicationPlan pyramid_replicate(SimState& world, NodeId owner,
                                  const PlaceConfig& cfg, RngStream& rng) {
  return replicate_by_regions(world, owner, cfg, rng, false);
}

ReplicationPlan glaras_replicate(SimState& world, NodeId owner,
                                 const PlaceConfig& cfg, RngStream& rng) {
  return replicate_by_regions(world, owner, cfg, rng, true);
}

}  // namespace repsim
