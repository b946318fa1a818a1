#include "repsim/topology.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <ostream>

#include "repsim/errors.hpp"

namespace repsim {

double Topology::rtt_ms(NodeId a, NodeId b) const {
  const double dx = x[a] - x[b];
  const double dy = y[a] - y[b];
  return std::sqrt(dx * dx + dy * dy) * rtt_scale_ms;
}

std::uint32_t common_prefix(std::uint32_t a, std::uint32_t b,
                            std::uint32_t bits) {
  if (bits == 0) return 0;
  const std::uint32_t diff = (a ^ b) << (32u - bits);
  if (diff == 0) return bits;
  return static_cast<std::uint32_t>(std::countl_zero(diff));
}

std::uint32_t ceil_log2(std::uint32_t v) {
  return v <= 1 ? 0 : std::uint32_t(std::bit_width(v - 1));
}

namespace {

// Median bisection: sort the span on the current axis (ties by node id so the
// order is total), give the low half bit 0 and the high half bit 1, recurse
// with axes alternating until all name_bits are assigned.
void assign_names(const std::vector<double>& x, const std::vector<double>& y,
                  std::vector<NodeId>& span, std::size_t lo, std::size_t hi,
                  std::uint32_t depth, std::uint32_t bits,
                  std::vector<std::uint32_t>& name) {
  if (depth == bits || hi <= lo) return;
  const std::vector<double>& axis = (depth % 2 == 0) ? x : y;
  std::sort(span.begin() + lo, span.begin() + hi,
            [&axis](NodeId a, NodeId b) {
              return axis[a] != axis[b] ? axis[a] < axis[b] : a < b;
            });
  const std::size_t left = lo + (hi - lo + 1) / 2;
  const std::uint32_t bit = 1u << (bits - 1 - depth);
  for (std::size_t i = left; i < hi; ++i) name[span[i]] |= bit;
  assign_names(x, y, span, lo, left, depth + 1, bits, name);
  assign_names(x, y, span, left, hi, depth + 1, bits, name);
}

}  // namespace

Topology generate_topology(const TopologyParams& params, RngStream& rng) {
  if (params.n < 2) throw ConfigError("topology: need at least 2 nodes");
  if (params.landmarks < 1) throw ConfigError("topology: need >= 1 landmark");

  Topology t;
  t.n = params.n;
  t.rtt_scale_ms = params.rtt_scale_ms;

  std::uint32_t vs = params.vs_size;
  if (vs == 0)
    vs = std::uint32_t(std::lround(1.33 * std::log2(double(params.n))));
  if (vs < 1) throw ConfigError("topology: virtual system size must be >= 1");
  t.prefix_bits = ceil_log2(vs);
  t.vspace = 1u << t.prefix_bits;

  t.name_bits = params.name_bits == 0
                    ? std::max(ceil_log2(params.n), t.prefix_bits)
                    : params.name_bits;
  if (t.name_bits < t.prefix_bits || t.name_bits > 32)
    throw ConfigError("topology: name id width out of range");

  t.x.resize(t.n);
  t.y.resize(t.n);
  for (std::uint32_t i = 0; i < t.n; ++i) {
    t.x[i] = rng.uniform();
    t.y[i] = rng.uniform();
  }

  t.num_regions = params.landmarks;
  t.landmark_x.resize(t.num_regions);
  t.landmark_y.resize(t.num_regions);
  for (std::uint32_t l = 0; l < t.num_regions; ++l) {
    t.landmark_x[l] = rng.uniform();
    t.landmark_y[l] = rng.uniform();
  }

  t.numerical_id.resize(t.n);
  std::iota(t.numerical_id.begin(), t.numerical_id.end(), 0u);
  for (std::uint32_t i = t.n - 1; i > 0; --i) {
    const std::uint32_t j = std::uint32_t(rng.uniform_int(i + 1));
    std::swap(t.numerical_id[i], t.numerical_id[j]);
  }

  t.name_id.assign(t.n, 0u);
  std::vector<NodeId> span(t.n);
  std::iota(span.begin(), span.end(), 0u);
  assign_names(t.x, t.y, span, 0, t.n, 0, t.name_bits, t.name_id);

  t.region.resize(t.n);
  for (std::uint32_t i = 0; i < t.n; ++i) {
    RegionId best = 0;
    double best_d2 = 0.0;
    for (std::uint32_t l = 0; l < t.num_regions; ++l) {
      const double dx = t.x[i] - t.landmark_x[l];
      const double dy = t.y[i] - t.landmark_y[l];
      const double d2 = dx * dx + dy * dy;
      if (l == 0 || d2 < best_d2) {
        best_d2 = d2;
        best = l;
      }
    }
    t.region[i] = best;
  }
  return t;
}

void dump_topology(const Topology& topo, std::ostream& out) {
  out << "id,x,y,numerical_id,name_id,region\n";
  char buf[160];
  for (std::uint32_t i = 0; i < topo.n; ++i) {
    std::string bits(topo.name_bits, '0');
    for (std::uint32_t b = 0; b < topo.name_bits; ++b)
      if (topo.name_id[i] & (1u << (topo.name_bits - 1 - b))) bits[b] = '1';
    std::snprintf(buf, sizeof buf, "%u,%.10g,%.10g,%u,", i, topo.x[i],
                  topo.y[i], topo.numerical_id[i]);
    out << buf << bits << ',' << topo.region[i] << '\n';
  }
}

}  // namespace repsim
