#include <algorithm>
#include <stdexcept>

#include "repsim/errors.hpp"
#include "repsim/kernels.hpp"
#include "repsim/strategies.hpp"

namespace repsim {

namespace {

const KnowledgeBase& kb_of(const SimState& world, NodeId owner) {
  if (owner >= world.owner_index.size() || world.owner_index[owner] < 0) {
    throw std::invalid_argument("node is not a data owner");
  }
  return world.kbs[world.owner_index[owner]];
}

bool selectable(const SimState& world, NodeId id,
                const std::vector<std::uint8_t>& excluded) {
  return world.online[id] && world.nodes[id].storage_free() && !excluded[id];
}

struct KbPool {
  std::vector<NodeId> ids;                      // ascending
  std::vector<const std::vector<double>*> uvs;  // parallel to ids
  std::vector<double> norms;                    // parallel to ids

  void erase_at(std::size_t k) {
    ids.erase(ids.begin() + k);
    uvs.erase(uvs.begin() + k);
    norms.erase(norms.begin() + k);
  }
};

// Eligible entries of the owner's knowledge base: online and storage-free
// right now, not yet chosen. Scored by the learned vectors.
KbPool kb_eligible(const SimState& world, const KnowledgeBase& kb,
                   const std::vector<std::uint8_t>& excluded) {
  KbPool pool;
  for (NodeId id : kb.known) {
    if (!selectable(world, id, excluded)) continue;
    pool.ids.push_back(id);
  }
  std::sort(pool.ids.begin(), pool.ids.end());
  pool.uvs.reserve(pool.ids.size());
  pool.norms.reserve(pool.ids.size());
  for (NodeId id : pool.ids) {
    const auto* e = kb.find(id);
    pool.uvs.push_back(&e->uv);
    pool.norms.push_back(uv_norm(e->uv));
  }
  for (std::size_t k = 1; k < pool.uvs.size(); ++k) {
    if (pool.uvs[k]->size() != pool.uvs[0]->size()) {
      throw std::invalid_argument("knowledge-base vectors differ in length");
    }
  }
  return pool;
}

void select(SimState& world, ReplicationPlan& plan,
            std::vector<std::uint8_t>& excluded, NodeId id) {
  excluded[id] = 1;
  plan.replicas.push_back(id);
  NodeState& ns = world.nodes[id];
  ns.rp_load += 1;
  refresh_uv(ns);
}

void finish(SimState& world, ReplicationPlan& plan) {
  plan.shortfall = plan.degree - static_cast<int>(plan.replicas.size());
  std::sort(plan.replicas.begin(), plan.replicas.end());
  if (!plan.replicas.empty()) {
    world.registry.publish(plan.owner, plan.replicas);
    world.ledger.log(OpClass::publish, world.topo->n, world.params.cost_factor);
  }
}

ReplicationPlan start_plan(NodeId owner, Strategy s, const PlaceConfig& cfg) {
  if (cfg.degree < 1) throw std::invalid_argument("replication degree must be >= 1");
  ReplicationPlan plan;
  plan.owner = owner;
  plan.strategy = s;
  plan.degree = cfg.degree;
  return plan;
}

}  // namespace

ReplicationPlan randomized_replicate(SimState& world, NodeId owner,
                                     const PlaceConfig& cfg, RngStream& rng) {
  const KnowledgeBase& kb = kb_of(world, owner);
  if (kb.known.empty()) throw PlanError("knowledge base is empty");
  ReplicationPlan plan = start_plan(owner, Strategy::random_kb, cfg);
  std::vector<std::uint8_t> excluded(world.topo->n, 0);
  if (cfg.exclude_owner) excluded[owner] = 1;
  // Uniform order without replacement over the whole KB; ineligible draws
  // are pinged and skipped.
  std::vector<NodeId> order = kb.known;
  std::sort(order.begin(), order.end());
  for (std::size_t k = 0;
       k < order.size() && plan.replicas.size() < std::size_t(cfg.degree); ++k) {
    const std::size_t j = k + rng.uniform_int(order.size() - k);
    std::swap(order[k], order[j]);
    if (selectable(world, order[k], excluded)) select(world, plan, excluded, order[k]);
  }
  finish(world, plan);
  return plan;
}

ReplicationPlan power_of_choice_replicate(SimState& world, NodeId owner,
                                          const PlaceConfig& cfg,
                                          RngStream& rng) {
  const KnowledgeBase& kb = kb_of(world, owner);
  ReplicationPlan plan = start_plan(owner, Strategy::poc, cfg);
  std::vector<std::uint8_t> excluded(world.topo->n, 0);
  if (cfg.exclude_owner) excluded[owner] = 1;
  KbPool pool = kb_eligible(world, kb, excluded);
  for (int k = 0; k < cfg.degree && !pool.ids.empty(); ++k) {
    const std::size_t a = rng.uniform_int(pool.ids.size());
    const std::size_t b = rng.uniform_int(pool.ids.size());
    std::size_t win = a;
    if (pool.norms[b] > pool.norms[a] ||
        (pool.norms[b] == pool.norms[a] && pool.ids[b] < pool.ids[a])) {
      win = b;
    }
    select(world, plan, excluded, pool.ids[win]);
    pool.erase_at(win);
  }
  finish(world, plan);
  return plan;
}

ReplicationPlan cluster_based_replicate(SimState& world, NodeId owner,
                                        const PlaceConfig& cfg, RngStream& rng) {
  const KnowledgeBase& kb = kb_of(world, owner);
  ReplicationPlan plan = start_plan(owner, Strategy::cluster, cfg);
  std::vector<std::uint8_t> excluded(world.topo->n, 0);
  if (cfg.exclude_owner) excluded[owner] = 1;
  KbPool pool = kb_eligible(world, kb, excluded);
  const std::size_t m = pool.ids.size();
  const std::size_t k = std::min<std::size_t>(cfg.degree, m);
  if (k == 0) {
    finish(world, plan);
    return plan;
  }
  if (k == m) {  // every node its own cluster
    for (NodeId id : pool.ids) select(world, plan, excluded, id);
    finish(world, plan);
    return plan;
  }
  const std::size_t dim = pool.uvs[0]->size();

  // Centers as flat vectors; assignment = nearest center, ties to the lower
  // center index.
  std::vector<std::vector<double>> centers;
  centers.reserve(k);
  std::vector<std::uint8_t> seeded(m, 0);
  {
    const std::size_t first = rng.uniform_int(m);
    centers.push_back(*pool.uvs[first]);
    seeded[first] = 1;
  }
  auto min_center_d2 = [&](std::size_t p) {
    double best = kernels::sq_dist(pool.uvs[p]->data(), centers[0].data(), dim);
    for (std::size_t c = 1; c < centers.size(); ++c) {
      best = std::min(best,
                      kernels::sq_dist(pool.uvs[p]->data(), centers[c].data(), dim));
    }
    return best;
  };
  while (centers.size() < k) {
    std::size_t far = m;
    double far_d2 = -1.0;
    for (std::size_t p = 0; p < m; ++p) {
      if (seeded[p]) continue;
      const double d2 = min_center_d2(p);
      if (d2 > far_d2) {
        far_d2 = d2;
        far = p;
      }
    }
    centers.push_back(*pool.uvs[far]);
    seeded[far] = 1;
  }

  std::vector<std::size_t> assign(m, 0), prev(m, k);
  for (int iter = 0; iter < 100 && assign != prev; ++iter) {
    prev = assign;
    for (std::size_t p = 0; p < m; ++p) {
      std::size_t best = 0;
      double best_d2 = kernels::sq_dist(pool.uvs[p]->data(), centers[0].data(), dim);
      for (std::size_t c = 1; c < k; ++c) {
        const double d2 =
            kernels::sq_dist(pool.uvs[p]->data(), centers[c].data(), dim);
        if (d2 < best_d2) {
          best_d2 = d2;
          best = c;
        }
      }
      assign[p] = best;
    }
    std::vector<std::size_t> sizes(k, 0);
    std::vector<std::vector<double>> means(k, std::vector<double>(dim, 0.0));
    for (std::size_t p = 0; p < m; ++p) {
      sizes[assign[p]] += 1;
      kernels::accumulate(means[assign[p]].data(), pool.uvs[p]->data(), dim);
    }
    std::vector<std::uint8_t> taken(m, 0);
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] > 0) {
        for (double& v : means[c]) v /= double(sizes[c]);
        centers[c] = std::move(means[c]);
        continue;
      }
      // Empty cluster: re-seed from the point farthest from its own center,
      // each point at most once per round.
      std::size_t far = m;
      double far_d2 = -1.0;
      for (std::size_t p = 0; p < m; ++p) {
        if (taken[p]) continue;
        const double d2 = kernels::sq_dist(pool.uvs[p]->data(),
                                           centers[assign[p]].data(), dim);
        if (d2 > far_d2) {
          far_d2 = d2;
          far = p;
        }
      }
      if (far == m) continue;
      taken[far] = 1;
      centers[c] = *pool.uvs[far];
    }
  }

  for (std::size_t c = 0; c < k; ++c) {
    std::size_t best = m;
    for (std::size_t p = 0; p < m; ++p) {
      if (assign[p] != c) continue;
      if (best == m || pool.norms[p] > pool.norms[best]) best = p;
    }
    if (best < m) select(world, plan, excluded, pool.ids[best]);
  }
  finish(world, plan);
  return plan;
}

ReplicationPlan correlation_based_replicate(SimState& world, NodeId owner,
                                            const PlaceConfig& cfg) {
  const KnowledgeBase& kb = kb_of(world, owner);
  ReplicationPlan plan = start_plan(owner, Strategy::correlation, cfg);
  std::vector<std::uint8_t> excluded(world.topo->n, 0);
  if (cfg.exclude_owner) excluded[owner] = 1;
  const KbPool pool = kb_eligible(world, kb, excluded);
  const std::size_t m = pool.ids.size();
  const std::size_t dim = m > 0 ? pool.uvs[0]->size() : 0;

  std::vector<std::size_t> ranked(m);
  for (std::size_t p = 0; p < m; ++p) ranked[p] = p;
  std::sort(ranked.begin(), ranked.end(), [&](std::size_t a, std::size_t b) {
    if (pool.norms[a] != pool.norms[b]) return pool.norms[a] > pool.norms[b];
    return pool.ids[a] < pool.ids[b];
  });

  std::vector<std::uint8_t> used(m, 0);
  const std::size_t n_seeds =
      std::min<std::size_t>(std::size_t(cfg.degree) / 2, m);
  std::vector<std::size_t> seeds(ranked.begin(), ranked.begin() + n_seeds);
  for (std::size_t s : seeds) {
    used[s] = 1;
    select(world, plan, excluded, pool.ids[s]);
  }
  // Partner = max norm relative to its correlation with the seed; disjoint
  // activity profiles (small dot product) pair up.
  for (std::size_t s : seeds) {
    std::size_t best = m;
    double best_ratio = 0.0;
    for (std::size_t p = 0; p < m; ++p) {
      if (used[p]) continue;
      const double corr = std::max(
          kernels::dot(pool.uvs[s]->data(), pool.uvs[p]->data(), dim), 1e-9);
      const double ratio = pool.norms[p] / corr;
      if (best == m || ratio > best_ratio ||
          (ratio == best_ratio && pool.ids[p] < pool.ids[best])) {
        best = p;
        best_ratio = ratio;
      }
    }
    if (best == m) break;
    used[best] = 1;
    select(world, plan, excluded, pool.ids[best]);
  }
  if (plan.replicas.size() < std::size_t(cfg.degree)) {
    for (std::size_t r : ranked) {
      if (plan.replicas.size() >= std::size_t(cfg.degree)) break;
      if (used[r]) continue;
      used[r] = 1;
      select(world, plan, excluded, pool.ids[r]);
    }
  }
  finish(world, plan);
  return plan;
}

ReplicationPlan place_replicas(SimState& world, NodeId owner, Strategy s,
                               const PlaceConfig& cfg, RngStream& rng) {
  switch (s) {
    case Strategy::pyramid:
      return pyramid_replicate(world, owner, cfg, rng);
    case Strategy::glaras:
      return glaras_replicate(world, owner, cfg, rng);
    case Strategy::random_kb:
      return randomized_replicate(world, owner, cfg, rng);
    case Strategy::poc:
      return power_of_choice_replicate(world, owner, cfg, rng);
    case Strategy::cluster:
      return cluster_based_replicate(world, owner, cfg, rng);
    case Strategy::correlation:
      return correlation_based_replicate(world, owner, cfg);
  }
  throw std::invalid_argument("unknown strategy");
}

std::uint64_t default_piggyback_budget(std::uint32_t n) {
  return 4ULL * n * std::max<std::uint32_t>(ceil_log2(n), 1);
}

void simulate_piggyback(SimState& world, std::uint64_t searches,
                        RngStream& rng) {
  const std::size_t n_online = world.online_ids.size();
  if (searches == 0 || n_online < 2) return;
  const std::size_t len =
      std::min<std::size_t>(std::max<std::size_t>(ceil_log2(world.topo->n), 2),
                            n_online);
  std::vector<NodeId> scratch = world.online_ids;
  std::vector<std::size_t> swaps(len);
  for (std::uint64_t s = 0; s < searches; ++s) {
    for (std::size_t k = 0; k < len; ++k) {
      const std::size_t j = k + rng.uniform_int(n_online - k);
      std::swap(scratch[k], scratch[j]);
      swaps[k] = j;
    }
    for (std::size_t k = 0; k < len; ++k) {
      const std::int32_t oi = world.owner_index[scratch[k]];
      if (oi < 0) continue;
      KnowledgeBase& kb = world.kbs[oi];
      for (std::size_t p = 0; p < len; ++p) {
        if (p == k) continue;
        const std::vector<double>& uv = world.nodes[scratch[p]].uv;
        if (!uv.empty()) kb.observe(scratch[p], uv, world.slot);
      }
    }
    world.ledger.log(OpClass::search, world.topo->n, world.params.cost_factor);
    for (std::size_t k = len; k-- > 0;) std::swap(scratch[k], scratch[swaps[k]]);
  }
}

}  // namespace repsim
