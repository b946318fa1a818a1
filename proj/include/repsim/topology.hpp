#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "repsim/rng.hpp"

namespace repsim {

using NodeId = std::uint32_t;
using RegionId = std::uint32_t;

struct TopologyParams {
  std::uint32_t n = 512;
  std::uint32_t landmarks = 8;
  std::uint32_t name_bits = 0;  // 0: max(ceil(log2 n), prefix_bits)
  std::uint32_t vs_size = 0;    // 0: round(1.33 * log2 n)
  double rtt_scale_ms = 100.0;
};

// Static overlay: node placement on the unit square, landmark regions,
// skip-graph-style ids. Name ids come from recursive coordinate bisection
// (median split, alternating axes), so a longer common name prefix means
// spatial proximity. Virtual id = first prefix_bits of the name id.
struct Topology {
  std::uint32_t n = 0;
  std::vector<double> x, y;
  std::vector<std::uint32_t> numerical_id;  // permutation of [0, n)
  std::vector<std::uint32_t> name_id;       // name_bits-bit values
  std::uint32_t name_bits = 0;
  std::uint32_t prefix_bits = 0;
  std::uint32_t vspace = 0;  // 1 << prefix_bits
  std::vector<RegionId> region;
  std::uint32_t num_regions = 0;
  std::vector<double> landmark_x, landmark_y;
  double rtt_scale_ms = 100.0;

  double rtt_ms(NodeId a, NodeId b) const;
  std::uint32_t virtual_of(NodeId v) const {
    return prefix_bits == 0 ? 0 : name_id[v] >> (name_bits - prefix_bits);
  }
};

// Length of the shared leading bit prefix of two `bits`-bit strings.
std::uint32_t common_prefix(std::uint32_t a, std::uint32_t b,
                            std::uint32_t bits);

std::uint32_t ceil_log2(std::uint32_t v);

Topology generate_topology(const TopologyParams& params, RngStream& rng);

void dump_topology(const Topology& topo, std::ostream& out);

}  // namespace repsim
