#pragma once

#include <string>
#include <vector>

#include "repsim/config.hpp"
#include "repsim/report.hpp"
#include "repsim/world.hpp"

namespace repsim {

// One (strategy, degree) evaluation on a shared topology/churn world.
struct RunResult {
  Strategy strategy = Strategy::pyramid;
  std::uint32_t degree = 0;
  std::vector<ReplicationPlan> plans;  // one per owner, owner-ascending
  CostLedger placement;                // ops spent placing these plans
};

struct ScenarioResult {
  std::uint64_t seed = 0;
  Topology topology;
  std::vector<RunResult> runs;  // config strategy order x degree order
  CostLedger base;              // reports + background searches
  bool isolation_ok = true;     // placements never leaked into the base world
  std::vector<PerSlotRow> rows;
  SummaryMap summary;
};

// The deterministic slot loop: online sets from churn traces, utility
// recomputation and reports at each node's first online slot per cycle,
// background piggyback searches, placement of every (strategy, degree) run at
// the learning boundary (on cloned worlds unless cfg.shared_world), then
// per-slot metrics. `degrees` selects a subset of cfg.degrees (the sweep
// decomposition); pass cfg.degrees for a full run.
ScenarioResult run_scenario(const ScenarioConfig& cfg, std::uint64_t seed,
                            const std::vector<std::uint32_t>& degrees);

// Write topology, per-slot, plan, and ledger files for one scenario into
// out_dir. `tag` distinguishes run layouts ("s<seed>") from sweep
// sub-runs ("s<seed>_r<degree>"). Throws std::runtime_error on IO failure.
void write_scenario_outputs(const ScenarioResult& result,
                            const std::string& out_dir, const std::string& tag);

void write_summary_outputs(const SummaryMap& summary,
                           const std::string& out_dir);

struct SweepResult {
  SummaryMap summary;
  bool isolation_ok = true;
};

// Per (seed x degree) scenarios, outputs written per sub-run, summaries
// merged in (seed, degree) loop order.
SweepResult run_sweep(const ScenarioConfig& cfg, const std::string& out_dir);

}  // namespace repsim
