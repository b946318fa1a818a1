#pragma once

#include <cstdint>
#include <vector>

#include "repsim/aggregation.hpp"

namespace repsim {

// Split a replication degree across regions proportionally to weights
// (largest remainder, ties to the lower region index), capping each region at
// caps[l] and redistributing capped excess over the remaining regions. The
// result sums to min(r, sum(caps)).
std::vector<int> split_degree(int r, const std::vector<std::uint32_t>& weights,
                              const std::vector<std::uint32_t>& caps);

// Per-slot coverage weights for one region of the table: the share of
// populated virtual nodes whose averaged utility at slot t is <= the
// region-wide average. Slots where utility is scarce get more weight.
// Degenerate (no populated virtual node) -> uniform.
std::vector<double> coverage_weights(const TableView& table, RegionId l);

// One region's placement problem over the virtual id space. Requesters and
// candidates both range over the populated ids; the rest are inert padding.
struct RwdInstance {
  std::uint32_t vspace = 0;  // virtual id space size (power of two)
  std::uint32_t slots = 0;
  std::uint32_t prefix_bits = 0;  // id width; c entries are prefix overlaps
  int sub_degree = 0;
  std::vector<double> ut;              // [vspace][slots] averaged utilities
  std::vector<std::uint32_t> counts;   // [vspace] reporters per id
  std::vector<double> weights;         // [slots]
  std::vector<std::uint16_t> active;   // populated ids, ascending (derived)
  std::vector<std::uint8_t> c;         // [vspace][vspace] prefix overlaps

  double contrib(std::uint32_t i, std::uint32_t j, std::uint32_t t) const {
    return double(c[i * vspace + j]) * ut[i * slots + t] * weights[t];
  }
};

// Fill the derived fields (active, c) and validate shapes.
void finalize_instance(RwdInstance& ins);

RwdInstance build_instance(const TableView& table, RegionId l, int sub_degree,
                           std::vector<double> weights);

struct RwdSolution {
  std::vector<std::uint16_t> y;  // chosen virtual replicas, ascending
  // Assigned candidate per (requester, slot): x[aj * slots + t] where aj
  // indexes instance.active. Values are virtual ids out of y.
  std::vector<std::uint16_t> x;
  double objective = 0.0;
};

// Canonical objective accumulation: requesters in ascending id order, slots
// inner. Both solvers report through this so their results are comparable
// bit-for-bit.
double objective_of(const RwdInstance& ins, const std::vector<std::uint16_t>& x);

// Throws std::logic_error naming the violated constraint.
void check_solution(const RwdInstance& ins, const RwdSolution& sol);

// Exact solver: enumerate candidate sets y (lexicographic); complete each by
// per-(requester, slot) argmax; when some member of y ends up serving
// nothing, repair optimally by a minimum-loss injective assignment of members
// to (requester, slot) pairs (branch and bound). First optimum in enumeration
// order wins ties.
RwdSolution solve_rwd(const RwdInstance& ins);

// Independent oracle: exhaustive over y, and over assignments via a suffix
// DP on (pair, still-uncovered members). Refuses instances beyond small
// bounds. Same tie-break (first optimum in lex order, lex-least assignment).
RwdSolution brute_force_rwd(const RwdInstance& ins);

}  // namespace repsim
