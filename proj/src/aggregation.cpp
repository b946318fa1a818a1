#include "repsim/aggregation.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "repsim/kernels.hpp"

namespace repsim {

UtilityTable::UtilityTable(std::uint32_t regions, std::uint32_t vspace,
                           std::uint32_t slots, std::uint32_t n_nodes)
    : regions_(regions),
      vspace_(vspace),
      slots_(slots),
      sums_(std::size_t(regions) * vspace * slots, 0.0),
      counts_(std::size_t(regions) * vspace, 0),
      reported_((n_nodes + 63) / 64, 0) {}

bool UtilityTable::report(NodeId node, RegionId region, std::uint32_t vnode,
                          const std::vector<double>& uv) {
  if (region >= regions_ || vnode >= vspace_ || uv.size() != slots_)
    throw std::invalid_argument("utility report out of range");
  std::uint64_t& word = reported_[node / 64];
  const std::uint64_t bit = 1ULL << (node % 64);
  if (word & bit) return false;
  word |= bit;
  counts_[cell(region, vnode)] += 1;
  kernels::accumulate(&sums_[cell(region, vnode) * slots_], uv.data(), slots_);
  reports_this_epoch_ += 1;
  return true;
}

void UtilityTable::reset(std::int64_t new_epoch) {
  if (new_epoch != epoch_ + 1)
    throw std::invalid_argument("table epochs must advance by 1");
  epoch_ = new_epoch;
  std::fill(sums_.begin(), sums_.end(), 0.0);
  std::fill(counts_.begin(), counts_.end(), 0u);
  std::fill(reported_.begin(), reported_.end(), 0ULL);
  reports_this_epoch_ = 0;
}

std::uint32_t UtilityTable::count(RegionId region, std::uint32_t vnode) const {
  return counts_[cell(region, vnode)];
}

double UtilityTable::avg(RegionId region, std::uint32_t vnode,
                         std::uint32_t t) const {
  const std::uint32_t c = counts_[cell(region, vnode)];
  if (c == 0) return 0.0;
  return sums_[cell(region, vnode) * slots_ + t] / double(c);
}

TableView snapshot(const UtilityTable& table) {
  TableView v;
  v.regions = table.regions();
  v.vspace = table.vspace();
  v.slots = table.slots();
  v.counts = table.raw_counts();
  v.avg.resize(v.counts.size() * std::size_t(v.slots));
  const auto& sums = table.raw_sums();
  for (std::size_t cell = 0; cell < v.counts.size(); ++cell) {
    const double c = v.counts[cell];
    for (std::uint32_t t = 0; t < v.slots; ++t)
      v.avg[cell * v.slots + t] =
          c > 0 ? sums[cell * v.slots + t] / c : 0.0;
  }
  return v;
}

const char* op_class_name(OpClass op) {
  switch (op) {
    case OpClass::report: return "report";
    case OpClass::read_table: return "read_table";
    case OpClass::publish: return "publish";
    case OpClass::lookup: return "lookup";
    case OpClass::search: return "search";
  }
  return "?";
}

std::uint64_t op_messages(std::uint32_t n_nodes, double factor) {
  if (n_nodes < 2) return 1;
  return std::uint64_t(std::ceil(factor * std::log2(double(n_nodes))));
}

void dump_ledger(const CostLedger& ledger, std::ostream& out) {
  out << "op_class,count,messages\n";
  for (int i = 0; i < kOpClasses; ++i)
    out << op_class_name(OpClass(i)) << ',' << ledger.count[i] << ','
        << ledger.messages[i] << '\n';
}

void ReplicaRegistry::publish(NodeId owner, std::vector<NodeId> replicas) {
  sets_[owner] = std::move(replicas);
}

const std::vector<NodeId>* ReplicaRegistry::lookup(NodeId owner) const {
  auto it = sets_.find(owner);
  return it == sets_.end() ? nullptr : &it->second;
}

}  // namespace repsim
