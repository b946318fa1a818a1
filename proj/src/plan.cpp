#include "repsim/plan.hpp"

#include <ostream>

#include <json.hpp>

namespace repsim {

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::pyramid: return "pyramid";
    case Strategy::glaras: return "glaras";
    case Strategy::random_kb: return "random";
    case Strategy::poc: return "poc";
    case Strategy::cluster: return "cluster";
    case Strategy::correlation: return "correlation";
  }
  return "?";
}

std::optional<Strategy> strategy_from_name(std::string_view name) {
  for (int i = 0; i < kStrategies; ++i) {
    const Strategy s = static_cast<Strategy>(i);
    if (name == strategy_name(s)) return s;
  }
  return std::nullopt;
}

void dump_plans(const std::vector<ReplicationPlan>& plans, std::ostream& out) {
  for (const ReplicationPlan& plan : plans) {
    nlohmann::ordered_json j;
    j["owner"] = plan.owner;
    j["strategy"] = strategy_name(plan.strategy);
    j["degree"] = plan.degree;
    nlohmann::ordered_json regions = nlohmann::ordered_json::array();
    for (const RegionPlan& rp : plan.regions) {
      nlohmann::ordered_json r;
      r["region"] = rp.region;
      r["sub_degree"] = rp.sub_degree;
      r["weights"] = rp.weights;
      r["y"] = rp.solution.y;
      r["objective"] = rp.solution.objective;
      regions.push_back(std::move(r));
    }
    j["regions"] = std::move(regions);
    nlohmann::ordered_json vreps = nlohmann::ordered_json::array();
    for (const auto& [region, vnode] : plan.virtual_replicas) {
      vreps.push_back(nlohmann::ordered_json::array({region, vnode}));
    }
    j["virtual_replicas"] = std::move(vreps);
    j["original_replicas"] = plan.replicas;
    j["shortfall"] = plan.shortfall;
    out << j.dump() << '\n';
  }
}

}  // namespace repsim
