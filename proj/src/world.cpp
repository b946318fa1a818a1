#include "repsim/world.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace repsim {

void KnowledgeBase::observe(NodeId id, const std::vector<double>& uv,
                            std::int64_t slot) {
  auto it = entries.find(id);
  if (it == entries.end()) {
    known.push_back(id);
    entries.emplace(id, Entry{uv, slot});
  } else {
    it->second.uv = uv;
    it->second.slot = slot;
  }
}

const KnowledgeBase::Entry* KnowledgeBase::find(NodeId id) const {
  auto it = entries.find(id);
  return it == entries.end() ? nullptr : &it->second;
}

SimState::SimState(const Topology& t, const std::vector<ChurnTrace>& tr,
                   const SimParams& p, std::vector<NodeId> owner_ids)
    : topo(&t),
      traces(&tr),
      params(p),
      nodes(t.n),
      table(t.num_regions, t.vspace, p.fpti_slots, t.n),
      owners(std::move(owner_ids)),
      owner_index(t.n, -1),
      online(t.n, 0) {
  if (tr.size() != t.n) {
    throw std::invalid_argument("trace count does not match topology size");
  }
  if (params.fpti_slots == 0 || params.ts_hours <= 0.0) {
    throw std::invalid_argument("invalid simulation parameters");
  }
  std::sort(owners.begin(), owners.end());
  for (std::size_t i = 0; i < owners.size(); ++i) {
    if (owners[i] >= t.n) {
      throw std::invalid_argument("owner id out of range");
    }
    if (owner_index[owners[i]] != -1) {
      throw std::invalid_argument("duplicate owner id");
    }
    owner_index[owners[i]] = static_cast<std::int32_t>(i);
  }
  kbs.resize(owners.size());
}

void SimState::update_online(std::int64_t s) {
  slot = s;
  const double t = static_cast<double>(s) * params.ts_hours;
  online_ids.clear();
  for (NodeId id = 0; id < nodes.size(); ++id) {
    const bool up = is_online((*traces)[id], t);
    online[id] = up ? 1 : 0;
    if (up) online_ids.push_back(id);
  }
}

namespace {

struct Fnv {
  std::uint64_t h = 1469598103934665603ULL;
  void bytes(const void* p, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 1099511628211ULL;
    }
  }
  void u64(std::uint64_t v) { bytes(&v, sizeof v); }
  void f64(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    u64(bits);
  }
};

}  // namespace

std::uint64_t world_hash(const SimState& world) {
  Fnv f;
  f.u64(static_cast<std::uint64_t>(world.slot));
  for (const NodeState& n : world.nodes) {
    f.f64(n.bandwidth_kbps);
    f.u64(static_cast<std::uint64_t>(n.capacity));
    f.u64(static_cast<std::uint64_t>(n.rp_load));
    f.u64(n.uv.size());
    for (double v : n.uv) f.f64(v);
    f.u64(static_cast<std::uint64_t>(n.uv_cycle));
    f.u64(static_cast<std::uint64_t>(n.last_report));
  }
  const UtilityTable& t = world.table;
  f.u64(static_cast<std::uint64_t>(t.epoch()));
  for (double v : t.raw_sums()) f.f64(v);
  for (std::uint32_t c : t.raw_counts()) f.u64(c);
  f.u64(t.reports_this_epoch());
  for (const auto& [owner, reps] : world.registry.all()) {
    f.u64(owner);
    f.u64(reps.size());
    for (NodeId r : reps) f.u64(r);
  }
  for (std::size_t i = 0; i < kOpClasses; ++i) {
    f.u64(world.ledger.count[i]);
    f.u64(world.ledger.messages[i]);
  }
  for (const KnowledgeBase& kb : world.kbs) {
    f.u64(kb.known.size());
    for (NodeId id : kb.known) {
      f.u64(id);
      const auto& e = kb.entries.at(id);
      f.u64(static_cast<std::uint64_t>(e.slot));
      for (double v : e.uv) f.f64(v);
    }
  }
  for (std::uint8_t b : world.online) f.u64(b);
  return f.h;
}

}  // namespace repsim
