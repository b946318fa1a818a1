#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

namespace repsim {

using NodeId = std::uint32_t;
using RegionId = std::uint32_t;

// Bulletin-board utility table: per (region, virtual node) the element-wise
// sum of reported utility vectors plus a reporter count, reset each epoch.
// One report per node per epoch; duplicates are rejected.
class UtilityTable {
 public:
  UtilityTable(std::uint32_t regions, std::uint32_t vspace,
               std::uint32_t slots, std::uint32_t n_nodes);

  bool report(NodeId node, RegionId region, std::uint32_t vnode,
              const std::vector<double>& uv);
  // Epochs are monotonic: new_epoch must be epoch() + 1.
  void reset(std::int64_t new_epoch);

  std::int64_t epoch() const { return epoch_; }
  std::uint32_t count(RegionId region, std::uint32_t vnode) const;
  // Averaged utility of (region, vnode) at slot t; 0 when no reports.
  double avg(RegionId region, std::uint32_t vnode, std::uint32_t t) const;
  std::uint32_t regions() const { return regions_; }
  std::uint32_t vspace() const { return vspace_; }
  std::uint32_t slots() const { return slots_; }
  std::uint64_t reports_this_epoch() const { return reports_this_epoch_; }
  const std::vector<double>& raw_sums() const { return sums_; }
  const std::vector<std::uint32_t>& raw_counts() const { return counts_; }

 private:
  std::size_t cell(RegionId l, std::uint32_t v) const {
    return std::size_t(l) * vspace_ + v;
  }
  std::uint32_t regions_, vspace_, slots_;
  std::vector<double> sums_;            // [region][vnode][slot]
  std::vector<std::uint32_t> counts_;   // [region][vnode]
  std::vector<std::uint64_t> reported_;  // bitset over node ids
  std::uint64_t reports_this_epoch_ = 0;
  std::int64_t epoch_ = 0;
};

// Averaged snapshot of the table (what one read returns). Pure; callers
// account for the read separately.
struct TableView {
  std::uint32_t regions = 0, vspace = 0, slots = 0;
  std::vector<double> avg;             // [region][vnode][slot]
  std::vector<std::uint32_t> counts;   // [region][vnode]

  double at(RegionId l, std::uint32_t v, std::uint32_t t) const {
    return avg[(std::size_t(l) * vspace + v) * slots + t];
  }
  std::uint32_t count(RegionId l, std::uint32_t v) const {
    return counts[std::size_t(l) * vspace + v];
  }
};

TableView snapshot(const UtilityTable& table);

// Message-cost accounting. Every logged operation costs
// ceil(factor * log2(n)) messages -- the overlay search/update bound.
enum class OpClass : int { report = 0, read_table, publish, lookup, search };
constexpr int kOpClasses = 5;
const char* op_class_name(OpClass op);

std::uint64_t op_messages(std::uint32_t n_nodes, double factor);

struct CostLedger {
  std::array<std::uint64_t, kOpClasses> count{};
  std::array<std::uint64_t, kOpClasses> messages{};

  void log(OpClass op, std::uint32_t n_nodes, double factor) {
    count[int(op)] += 1;
    messages[int(op)] += op_messages(n_nodes, factor);
  }
};

void dump_ledger(const CostLedger& ledger, std::ostream& out);

// Published owner -> replica set mapping (the authoritative oRepSet copy).
class ReplicaRegistry {
 public:
  void publish(NodeId owner, std::vector<NodeId> replicas);
  const std::vector<NodeId>* lookup(NodeId owner) const;
  const std::map<NodeId, std::vector<NodeId>>& all() const { return sets_; }

 private:
  std::map<NodeId, std::vector<NodeId>> sets_;
};

}  // namespace repsim
