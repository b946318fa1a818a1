#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "repsim/rwd.hpp"

namespace repsim {

enum class Strategy : int {
  pyramid = 0,
  glaras,
  random_kb,
  poc,
  cluster,
  correlation,
};
constexpr int kStrategies = 6;

const char* strategy_name(Strategy s);
std::optional<Strategy> strategy_from_name(std::string_view name);

struct RegionPlan {
  RegionId region = 0;
  int sub_degree = 0;
  std::vector<double> weights;
  RwdSolution solution;
};

struct ReplicationPlan {
  NodeId owner = 0;
  Strategy strategy = Strategy::pyramid;
  int degree = 0;
  std::vector<std::pair<RegionId, std::uint16_t>> virtual_replicas;
  std::vector<NodeId> replicas;  // ascending
  int shortfall = 0;
  std::vector<RegionPlan> regions;  // pyramid / glaras detail
};

void dump_plans(const std::vector<ReplicationPlan>& plans, std::ostream& out);

}  // namespace repsim
