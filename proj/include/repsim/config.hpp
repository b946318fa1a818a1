#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "repsim/plan.hpp"

namespace repsim {

struct ChurnConfig {
  double session_mean_hours = 2.7;
  double session_shape = 0.6;
  double gap_mean_hours = 2.8;
  double region_factor_min = 0.7;
  double region_factor_max = 1.3;
  double gap_shape_min = 0.5;
  double gap_shape_max = 1.0;
};

struct ScenarioConfig {
  std::uint32_t n = 512;
  std::uint32_t landmarks = 8;
  std::uint32_t vs_size = 0;    // 0: round(1.33 * log2 n)
  std::uint32_t name_bits = 0;  // 0: derived from n and vs_size
  double rtt_scale_ms = 100.0;

  std::uint32_t fpti_slots = 24;
  double ts_hours = 1.0;
  double horizon_hours = 2160.0;
  double learning_hours = 168.0;

  std::uint32_t alpha = 3;
  std::uint32_t num_owners = 10;
  std::vector<std::uint32_t> degrees{2, 4, 6, 8, 10, 12, 14};
  std::vector<Strategy> strategies{Strategy::pyramid,  Strategy::glaras,
                                   Strategy::random_kb, Strategy::poc,
                                   Strategy::cluster,  Strategy::correlation};
  bool exclude_owner = false;
  bool shared_world = false;

  ChurnConfig churn;
  double bandwidth_mean_kbps = 2000.0;
  double bandwidth_max_factor = 10.0;
  int storage_min = 1;
  int storage_max = 3;

  std::uint64_t piggyback_budget = 0;  // 0: 4 * n * ceil(log2 n) per slot
  double cost_factor = 1.0;

  std::vector<std::uint64_t> seeds{1};
  std::string out_dir;  // empty: $REPSIM_OUT, then "results"

  std::uint32_t horizon_slots() const;
  std::uint32_t learning_slot() const;
};

// key = value lines, # comments, dotted keys for the nested groups.
// Unknown keys and malformed values raise ConfigError.
ScenarioConfig parse_config_text(std::string_view text);
ScenarioConfig parse_config_file(const std::string& path);

// Cross-field invariants; throws ConfigError naming the offending field.
void validate_config(const ScenarioConfig& cfg);

}  // namespace repsim
