#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "repsim/metrics.hpp"
#include "support/gen.hpp"

using namespace repsim;

namespace {

test::NodeSpec node_at(double x, double y, std::uint32_t name_id) {
  test::NodeSpec ns;
  ns.x = x;
  ns.y = y;
  ns.name_id = name_id;
  return ns;
}

// Integral 3-4-5 / 6-8-10 coordinates so every mapping distance is exact.
struct MetricsFix {
  Topology topo;
  std::vector<NodeState> nodes;

  MetricsFix() {
    test::WorldSpec ws;
    ws.name_bits = 3;
    ws.rtt_scale_ms = 1.0;
    ws.nodes = {
        node_at(0.0, 0.0, 0),  node_at(10.0, 0.0, 1), node_at(3.0, 4.0, 2),
        node_at(10.0, 5.0, 3), node_at(6.0, 8.0, 4),
    };
    topo = test::build_topology(ws);
    nodes.resize(5);
    const double bw[5] = {800.0, 400.0, 100.0, 100.0, 100.0};
    for (int i = 0; i < 5; ++i) nodes[i].bandwidth_kbps = bw[i];
  }
};

}  // namespace

TEST_CASE("requester_set copies ids and coordinates") {
  MetricsFix f;
  const RequesterSet req = requester_set(f.topo, {1, 4});
  CHECK(req.ids == std::vector<NodeId>{1, 4});
  CHECK(req.px == std::vector<double>{10.0, 6.0});
  CHECK(req.py == std::vector<double>{0.0, 8.0});
}

TEST_CASE("per-slot metrics on a fully online world") {
  MetricsFix f;
  const std::vector<std::uint8_t> online(5, 1);
  const RequesterSet req = requester_set(f.topo, {0, 1, 2, 3, 4});
  const OwnerSlotMetrics m =
      owner_slot_metrics(f.topo, f.nodes, online, req, {0, 1});

  CHECK(m.online_replicas == 2);
  CHECK(m.mapped == 5);
  CHECK(m.unavailable == 0);
  CHECK(m.replica_ids == std::vector<NodeId>{0, 1});
  // 0,2 -> replica 0 (dist 0, 5); 1,3,4 -> replica 1 (dist 0, 5, sqrt(80))
  CHECK(m.replica_load == std::vector<std::uint32_t>{2, 3});
  CHECK(m.avg_delay_ms ==
        doctest::Approx((10.0 + std::sqrt(80.0)) / 5.0).epsilon(1e-12));
  CHECK(m.avg_bw_kbps == 240.0);  // (800 + 400) / 5
}

TEST_CASE("offline replicas are ignored, shrinking the pool") {
  MetricsFix f;
  std::vector<std::uint8_t> online(5, 1);
  online[1] = 0;  // also drops node 1 from the requester set
  const RequesterSet req = requester_set(f.topo, {0, 2, 3, 4});
  const OwnerSlotMetrics m =
      owner_slot_metrics(f.topo, f.nodes, online, req, {0, 1});

  CHECK(m.online_replicas == 1);
  CHECK(m.replica_ids == std::vector<NodeId>{0});
  CHECK(m.mapped == 4);
  CHECK(m.replica_load == std::vector<std::uint32_t>{4});
  // distances to node 0: 0, 5, sqrt(125), 10
  CHECK(m.avg_delay_ms ==
        doctest::Approx((15.0 + std::sqrt(125.0)) / 4.0).epsilon(1e-12));
  CHECK(m.avg_bw_kbps == 200.0);  // 800 / 4
}

TEST_CASE("no online replica leaves every requester unavailable") {
  MetricsFix f;
  std::vector<std::uint8_t> online(5, 1);
  online[1] = 0;
  const RequesterSet req = requester_set(f.topo, {0, 2, 3, 4});
  const OwnerSlotMetrics m =
      owner_slot_metrics(f.topo, f.nodes, online, req, {1});
  CHECK(m.online_replicas == 0);
  CHECK(m.mapped == 0);
  CHECK(m.unavailable == 4);
  CHECK(m.avg_bw_kbps == 0.0);
  CHECK(m.avg_delay_ms == 0.0);
  CHECK(m.replica_ids.empty());
  CHECK(m.replica_load.empty());
}

TEST_CASE("distance ties map to the lower replica id; idle replicas add no bandwidth") {
  test::WorldSpec ws;
  ws.name_bits = 2;
  ws.rtt_scale_ms = 1.0;
  ws.nodes = {node_at(0.0, 0.0, 0), node_at(0.0, 0.0, 1), node_at(3.0, 4.0, 2)};
  const Topology topo = test::build_topology(ws);
  std::vector<NodeState> nodes(3);
  nodes[0].bandwidth_kbps = 800.0;
  nodes[1].bandwidth_kbps = 400.0;
  nodes[2].bandwidth_kbps = 100.0;
  const std::vector<std::uint8_t> online(3, 1);
  const RequesterSet req = requester_set(topo, {0, 1, 2});
  const OwnerSlotMetrics m = owner_slot_metrics(topo, nodes, online, req, {0, 1});

  // both replicas sit at the origin: every tie resolves to replica 0
  CHECK(m.replica_load == std::vector<std::uint32_t>{3, 0});
  CHECK(m.avg_bw_kbps == doctest::Approx(800.0 / 3.0).epsilon(1e-12));
  CHECK(m.avg_delay_ms == doctest::Approx(5.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("metric invariants and the single-requester rule on random worlds") {
  RngStream rng(2024);
  for (int rep = 0; rep < 40; ++rep) {
    const std::uint32_t n = 10 + std::uint32_t(rng.uniform_int(25));
    test::WorldSpec ws;
    ws.name_bits = 6;
    ws.rtt_scale_ms = 50.0;
    for (std::uint32_t i = 0; i < n; ++i)
      ws.nodes.push_back(node_at(rng.uniform(), rng.uniform(), i));
    const Topology topo = test::build_topology(ws);
    std::vector<NodeState> nodes(n);
    double max_bw = 0.0;
    for (auto& nd : nodes) {
      nd.bandwidth_kbps = 100.0 + 900.0 * rng.uniform();
      max_bw = std::max(max_bw, nd.bandwidth_kbps);
    }
    std::vector<std::uint8_t> online(n);
    std::vector<NodeId> online_ids;
    for (std::uint32_t i = 0; i < n; ++i) {
      online[i] = rng.uniform() < 0.7 ? 1 : 0;
      if (online[i]) online_ids.push_back(i);
    }
    std::vector<NodeId> replicas;
    for (std::uint32_t i = 0; i < n; ++i)
      if (rng.uniform() < 0.2) replicas.push_back(i);
    const RequesterSet req = requester_set(topo, online_ids);
    const OwnerSlotMetrics m =
        owner_slot_metrics(topo, nodes, online, req, replicas);

    // conservation: every requester lands on exactly one replica
    std::uint64_t load_sum = 0;
    for (std::uint32_t l : m.replica_load) load_sum += l;
    if (m.online_replicas == 0) {
      CHECK(m.mapped == 0);
      CHECK(m.unavailable == online_ids.size());
    } else {
      CHECK(m.mapped == online_ids.size());
      CHECK(m.unavailable == 0);
      CHECK(load_sum == m.mapped);
      if (m.mapped > 0) {
        CHECK(m.avg_bw_kbps <= max_bw + 1e-12);
        CHECK(m.avg_delay_ms <= std::sqrt(2.0) * 50.0 + 1e-12);
        CHECK(m.avg_bw_kbps >= 0.0);
      }
    }
    for (NodeId r : m.replica_ids) CHECK(online[r] == 1);

    // the one-requester helper agrees with the batch mapping
    std::vector<std::uint32_t> loads(m.replica_ids.size(), 0);
    double delay = 0.0;
    for (NodeId requester : online_ids) {
      const auto got = closest_online_replica(topo, online, requester, replicas);
      if (m.online_replicas == 0) {
        CHECK_FALSE(got.has_value());
        continue;
      }
      REQUIRE(got.has_value());
      const auto it =
          std::find(m.replica_ids.begin(), m.replica_ids.end(), *got);
      REQUIRE(it != m.replica_ids.end());
      loads[std::size_t(it - m.replica_ids.begin())] += 1;
      const double dx = topo.x[requester] - topo.x[*got];
      const double dy = topo.y[requester] - topo.y[*got];
      delay += std::sqrt(dx * dx + dy * dy) * topo.rtt_scale_ms;
    }
    if (m.online_replicas > 0) {
      CHECK(loads == m.replica_load);
      CHECK(m.avg_delay_ms ==
            doctest::Approx(delay / double(m.mapped)).epsilon(1e-9));
    }
  }
}

TEST_CASE("telescoped bandwidth equals the per-requester definition") {
  MetricsFix f;
  const std::vector<std::uint8_t> online(5, 1);
  const RequesterSet req = requester_set(f.topo, {0, 1, 2, 3, 4});
  const OwnerSlotMetrics m =
      owner_slot_metrics(f.topo, f.nodes, online, req, {0, 1});
  double per_req = 0.0;
  for (NodeId requester : req.ids) {
    const auto r = closest_online_replica(f.topo, online, requester, {0, 1});
    REQUIRE(r.has_value());
    const auto it = std::find(m.replica_ids.begin(), m.replica_ids.end(), *r);
    const std::uint32_t load =
        m.replica_load[std::size_t(it - m.replica_ids.begin())];
    per_req += f.nodes[*r].bandwidth_kbps / double(load);
  }
  CHECK(m.avg_bw_kbps == doctest::Approx(per_req / 5.0).epsilon(1e-12));
}

TEST_CASE("metrics are pure: repeated calls agree and inputs survive") {
  MetricsFix f;
  const std::vector<std::uint8_t> online(5, 1);
  const RequesterSet req = requester_set(f.topo, {0, 1, 2, 3, 4});
  const std::vector<NodeId> replicas = {0, 1};
  const OwnerSlotMetrics a =
      owner_slot_metrics(f.topo, f.nodes, online, req, replicas);
  const OwnerSlotMetrics b =
      owner_slot_metrics(f.topo, f.nodes, online, req, replicas);
  CHECK(a.avg_bw_kbps == b.avg_bw_kbps);
  CHECK(a.avg_delay_ms == b.avg_delay_ms);
  CHECK(a.replica_load == b.replica_load);
  CHECK(a.replica_ids == b.replica_ids);
  CHECK(req.ids == std::vector<NodeId>{0, 1, 2, 3, 4});
  CHECK(replicas == std::vector<NodeId>{0, 1});
}
