#include <doctest.h>

#include <cmath>

#include "repsim/node_state.hpp"
#include "support/gen.hpp"

using namespace repsim;

TEST_CASE("sample_node_resources") {
  RngStream bw(1), st(2);
  std::vector<NodeState> nodes(10000);
  ResourceParams p;
  sample_node_resources(nodes, bw, st, p);

  double max_bw = 0.0, bw_sum = 0.0, cap_sum = 0.0;
  for (const NodeState& n : nodes) {
    CHECK(n.bandwidth_kbps > 0.0);
    CHECK(n.bandwidth_kbps <= 10.0 * 2000.0);
    CHECK(n.capacity >= 1);
    CHECK(n.capacity <= 3);
    max_bw = std::max(max_bw, n.bandwidth_kbps);
    bw_sum += n.bandwidth_kbps;
    cap_sum += n.capacity;
  }
  CHECK(bw_sum / nodes.size() == doctest::Approx(2000.0).epsilon(0.05));
  CHECK(cap_sum / nodes.size() == doctest::Approx(2.0).epsilon(0.03));

  SUBCASE("normalization by the world max") {
    double max_norm = 0.0;
    for (const NodeState& n : nodes) {
      CHECK(n.bandwidth_norm == n.bandwidth_kbps / max_bw);
      max_norm = std::max(max_norm, n.bandwidth_norm);
    }
    CHECK(max_norm == 1.0);
  }
  SUBCASE("deterministic in the streams") {
    RngStream bw2(1), st2(2);
    std::vector<NodeState> again(10000);
    sample_node_resources(again, bw2, st2, p);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      CHECK(again[i].bandwidth_kbps == nodes[i].bandwidth_kbps);
      CHECK(again[i].capacity == nodes[i].capacity);
    }
  }
}

TEST_CASE("recompute_uv composes availability, bandwidth and load") {
  // online 3 of 7 hours of the single slot -> p = 3/7; uv = p * 0.98 = 0.42
  const ChurnTrace tr = test::trace_spans({{0, 3}}, 7.0);
  NodeState n;
  n.bandwidth_norm = 0.98;
  recompute_uv(n, tr, 1, 7.0, 1);
  REQUIRE(n.uv.size() == 1);
  CHECK(n.avail[0] == doctest::Approx(3.0 / 7.0).epsilon(1e-12));
  CHECK(n.uv[0] == doctest::Approx(0.42).epsilon(1e-12));
  CHECK(n.uv_cycle == 1);

  SUBCASE("zero bandwidth gives a zero vector") {
    NodeState z;
    z.bandwidth_norm = 0.0;
    recompute_uv(z, tr, 1, 7.0, 1);
    CHECK(z.uv[0] == 0.0);
  }
  SUBCASE("load discount") {
    NodeState l;
    l.bandwidth_norm = 0.8;
    const ChurnTrace half = test::trace_spans({{0, 0.5}}, 1.0);
    l.rp_load = 3;
    recompute_uv(l, half, 1, 1.0, 1);
    CHECK(l.uv[0] == doctest::Approx(0.8 * 0.5 / 4.0).epsilon(1e-12));
  }
}

TEST_CASE("uv is monotone in its inputs") {
  RngStream rng(9);
  for (int rep = 0; rep < 200; ++rep) {
    NodeState a, b;
    a.avail = {rng.uniform(), rng.uniform()};
    b.avail = a.avail;
    a.bandwidth_norm = rng.uniform();
    b.bandwidth_norm = a.bandwidth_norm;
    a.rp_load = int(rng.uniform_int(4));
    b.rp_load = a.rp_load;
    switch (rep % 3) {
      case 0:  // higher availability
        b.avail[0] = a.avail[0] + (1.0 - a.avail[0]) * rng.uniform();
        break;
      case 1:  // higher bandwidth
        b.bandwidth_norm = a.bandwidth_norm + (1.0 - a.bandwidth_norm) * 0.5;
        break;
      case 2:  // higher load
        b.rp_load = a.rp_load + 1;
        break;
    }
    refresh_uv(a);
    refresh_uv(b);
    for (std::size_t t = 0; t < a.uv.size(); ++t) {
      if (rep % 3 == 2) CHECK(b.uv[t] <= a.uv[t]);
      else CHECK(b.uv[t] >= a.uv[t]);
    }
  }
}

TEST_CASE("incrementing rp_load rescales by (rp+1)/(rp+2)") {
  NodeState n;
  n.bandwidth_norm = 0.73;
  n.avail = {0.2, 0.9, 0.5, 0.0};
  n.rp_load = 2;
  refresh_uv(n);
  const std::vector<double> before = n.uv;
  n.rp_load += 1;
  refresh_uv(n);
  for (std::size_t t = 0; t < before.size(); ++t)
    CHECK(n.uv[t] == doctest::Approx(before[t] * 3.0 / 4.0).epsilon(1e-12));
}

TEST_CASE("refresh_uv without availability is a no-op") {
  NodeState n;
  n.bandwidth_norm = 0.5;
  refresh_uv(n);
  CHECK(n.uv.empty());
  CHECK(utility_score(n) == 0.0);
}

TEST_CASE("uv_norm") {
  CHECK(uv_norm({}) == 0.0);
  CHECK(uv_norm({0.6, 0.8}) == doctest::Approx(1.0).epsilon(1e-12));
  const std::vector<double> flat(24, 0.5);
  CHECK(uv_norm(flat) == std::sqrt(6.0));  // 24 * 0.25 sums exactly
  NodeState n;
  n.avail = {0.6, 0.8};
  n.bandwidth_norm = 1.0;
  refresh_uv(n);
  CHECK(utility_score(n) == uv_norm(n.uv));
}

TEST_CASE("storage_free") {
  NodeState n;
  n.capacity = 1;
  CHECK(n.storage_free());
  n.rp_load = 1;
  CHECK_FALSE(n.storage_free());
  n.capacity = 3;
  CHECK(n.storage_free());
}
