#pragma once

// Shared test scaffolding: scripted churn traces, a hand-built world whose
// coordinates / ids / regions / resources are fully controlled, a seeded
// random-instance generator for the placement-solver cross-checks, and a
// self-cleaning temp directory.

#include <unistd.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "repsim/churn.hpp"
#include "repsim/node_state.hpp"
#include "repsim/rng.hpp"
#include "repsim/rwd.hpp"
#include "repsim/topology.hpp"
#include "repsim/world.hpp"

namespace repsim::test {

inline ChurnTrace trace_spans(std::vector<std::pair<double, double>> spans,
                              double horizon) {
  ChurnTrace t;
  t.horizon_hours = horizon;
  for (const auto& [a, b] : spans) {
    t.start.push_back(a);
    t.end.push_back(b);
  }
  return t;
}

inline ChurnTrace always_online(double horizon) {
  return trace_spans({{0.0, horizon}}, horizon);
}

inline ChurnTrace never_online(double horizon) {
  return trace_spans({}, horizon);
}

struct NodeSpec {
  double x = 0.5, y = 0.5;
  RegionId region = 0;
  std::uint32_t name_id = 0;                 // name_bits wide
  std::uint32_t numerical = UINT32_MAX;      // default: the node index
  double bandwidth_kbps = 1000.0;
  int capacity = 1;
  std::vector<double> avail;  // preset slot availabilities; empty = no uv yet
};

struct WorldSpec {
  std::uint32_t name_bits = 1;
  std::uint32_t prefix_bits = 1;
  std::uint32_t num_regions = 1;
  double rtt_scale_ms = 100.0;
  std::uint32_t fpti_slots = 1;
  double ts_hours = 1.0;
  double horizon_hours = 1000.0;
  std::vector<NodeSpec> nodes;
  std::vector<NodeId> owners{0};
  std::vector<ChurnTrace> traces;  // optional; default all always-online
};

inline Topology build_topology(const WorldSpec& spec) {
  Topology t;
  t.n = static_cast<std::uint32_t>(spec.nodes.size());
  t.name_bits = spec.name_bits;
  t.prefix_bits = spec.prefix_bits;
  t.vspace = 1u << spec.prefix_bits;
  t.num_regions = spec.num_regions;
  t.rtt_scale_ms = spec.rtt_scale_ms;
  t.landmark_x.assign(spec.num_regions, 0.0);
  t.landmark_y.assign(spec.num_regions, 0.0);
  for (std::uint32_t i = 0; i < t.n; ++i) {
    const NodeSpec& ns = spec.nodes[i];
    t.x.push_back(ns.x);
    t.y.push_back(ns.y);
    t.name_id.push_back(ns.name_id);
    t.numerical_id.push_back(ns.numerical == UINT32_MAX ? i : ns.numerical);
    t.region.push_back(ns.region);
  }
  return t;
}

// Owns the topology and traces SimState points at; not movable.
struct World {
  Topology topo;
  std::vector<ChurnTrace> traces;
  SimParams params;
  SimState sim;

  explicit World(const WorldSpec& spec)
      : topo(build_topology(spec)),
        traces(spec.traces.empty()
                   ? std::vector<ChurnTrace>(spec.nodes.size(),
                                             always_online(spec.horizon_hours))
                   : spec.traces),
        params{spec.fpti_slots, spec.ts_hours, 1.0},
        sim(topo, traces, params, spec.owners) {
    double max_bw = 0.0;
    for (const NodeSpec& ns : spec.nodes)
      max_bw = std::max(max_bw, ns.bandwidth_kbps);
    for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
      NodeState& n = sim.nodes[i];
      n.bandwidth_kbps = spec.nodes[i].bandwidth_kbps;
      n.bandwidth_norm = max_bw > 0 ? n.bandwidth_kbps / max_bw : 0.0;
      n.capacity = spec.nodes[i].capacity;
      if (!spec.nodes[i].avail.empty()) {
        n.avail = spec.nodes[i].avail;
        n.uv_cycle = 0;
        refresh_uv(n);
      }
    }
    sim.update_online(0);
  }
  World(const World&) = delete;
  World& operator=(const World&) = delete;
};

// Random placement instance within the exhaustive-solver bounds. Mixes in
// zero utilities, duplicated values, and constant weights so tie handling is
// exercised, not just generic positions.
inline RwdInstance random_instance(RngStream& rng) {
  RwdInstance ins;
  ins.prefix_bits = static_cast<std::uint32_t>(rng.uniform_int(3));  // 0..2
  ins.vspace = 1u << ins.prefix_bits;
  ins.slots = 1 + static_cast<std::uint32_t>(rng.uniform_int(4));
  ins.counts.assign(ins.vspace, 0);
  const std::uint32_t populated =
      1 + static_cast<std::uint32_t>(rng.uniform_int(ins.vspace));
  std::vector<std::uint32_t> ids(ins.vspace);
  for (std::uint32_t v = 0; v < ins.vspace; ++v) ids[v] = v;
  for (std::uint32_t k = 0; k < populated; ++k) {
    const std::size_t j = k + rng.uniform_int(ins.vspace - k);
    std::swap(ids[k], ids[j]);
    ins.counts[ids[k]] = 1 + static_cast<std::uint32_t>(rng.uniform_int(5));
  }
  ins.ut.assign(std::size_t(ins.vspace) * ins.slots, 0.0);
  const bool coarse = rng.uniform() < 0.5;  // coarse grid forces ties
  for (std::uint32_t v = 0; v < ins.vspace; ++v) {
    if (ins.counts[v] == 0) continue;
    for (std::uint32_t t = 0; t < ins.slots; ++t) {
      const double u = coarse ? 0.25 * double(rng.uniform_int(5))
                              : rng.uniform();
      ins.ut[std::size_t(v) * ins.slots + t] = u;
    }
  }
  ins.weights.assign(ins.slots, 1.0 / double(ins.slots));
  if (rng.uniform() < 0.5) {
    double sum = 0.0;
    for (double& w : ins.weights) {
      w = 0.1 + rng.uniform();
      sum += w;
    }
    for (double& w : ins.weights) w /= sum;
  }
  const int max_r = std::min<int>(3, int(populated));
  ins.sub_degree = 1 + int(rng.uniform_int(std::uint64_t(max_r)));
  finalize_instance(ins);
  return ins;
}

struct TempDir {
  std::filesystem::path path;

  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() /
           ("repsim_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string str() const { return path.string(); }
};

}  // namespace repsim::test
