#include "repsim/sim.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "repsim/errors.hpp"
#include "repsim/metrics.hpp"
#include "repsim/search.hpp"
#include "repsim/strategies.hpp"

namespace repsim {

namespace {

std::vector<NodeId> pick_owners(std::uint32_t n, std::uint32_t count,
                                RngStream& rng) {
  std::vector<NodeId> ids(n);
  for (NodeId i = 0; i < n; ++i) ids[i] = i;
  for (std::uint32_t k = 0; k < count; ++k) {
    const std::size_t j = k + rng.uniform_int(n - k);
    std::swap(ids[k], ids[j]);
  }
  ids.resize(count);
  std::sort(ids.begin(), ids.end());
  return ids;
}

ReplicationPlan shortfall_plan(NodeId owner, Strategy s, std::uint32_t degree) {
  ReplicationPlan plan;
  plan.owner = owner;
  plan.strategy = s;
  plan.degree = static_cast<int>(degree);
  plan.shortfall = static_cast<int>(degree);
  return plan;
}

// Place one (strategy, degree) run: owners in ascending order, each with its
// own rng stream so results are independent of evaluation order. A PlanError
// becomes a full-shortfall plan and the run continues.
RunResult place_run(SimState& world, std::uint64_t seed, Strategy strategy,
                    std::uint32_t degree, const ScenarioConfig& cfg) {
  RunResult run;
  run.strategy = strategy;
  run.degree = degree;
  PlaceConfig pc;
  pc.alpha = cfg.alpha;
  pc.degree = static_cast<int>(degree);
  pc.exclude_owner = cfg.exclude_owner;
  for (NodeId owner : world.owners) {
    RngStream rng(derive_seed(seed, Stream::strategy,
                              static_cast<std::uint64_t>(strategy), degree,
                              owner));
    try {
      run.plans.push_back(place_replicas(world, owner, strategy, pc, rng));
    } catch (const PlanError&) {
      run.plans.push_back(shortfall_plan(owner, strategy, degree));
    }
  }
  return run;
}

void do_placements(SimState& world, const ScenarioConfig& cfg,
                   std::uint64_t seed, const std::vector<std::uint32_t>& degrees,
                   ScenarioResult& result) {
  const std::uint64_t h0 = world_hash(world);
  for (Strategy strategy : cfg.strategies) {
    for (std::uint32_t degree : degrees) {
      RunResult run;
      if (cfg.shared_world) {
        const CostLedger before = world.ledger;
        run = place_run(world, seed, strategy, degree, cfg);
        run.placement = world.ledger;
        for (std::size_t i = 0; i < kOpClasses; ++i) {
          run.placement.count[i] -= before.count[i];
          run.placement.messages[i] -= before.messages[i];
        }
      } else {
        SimState clone = world;
        clone.ledger = CostLedger{};
        run = place_run(clone, seed, strategy, degree, cfg);
        run.placement = clone.ledger;
        if (world_hash(world) != h0) result.isolation_ok = false;
      }
      result.runs.push_back(std::move(run));
    }
  }
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg, std::uint64_t seed,
                            const std::vector<std::uint32_t>& degrees) {
  validate_config(cfg);
  for (std::uint32_t d : degrees) {
    if (std::find(cfg.degrees.begin(), cfg.degrees.end(), d) == cfg.degrees.end()) {
      throw std::invalid_argument("degree subset not drawn from the config");
    }
  }

  ScenarioResult result;
  result.seed = seed;

  TopologyParams tp;
  tp.n = cfg.n;
  tp.landmarks = cfg.landmarks;
  tp.name_bits = cfg.name_bits;
  tp.vs_size = cfg.vs_size;
  tp.rtt_scale_ms = cfg.rtt_scale_ms;
  {
    RngStream rng(derive_seed(seed, Stream::topology));
    result.topology = generate_topology(tp, rng);
  }
  const Topology& topo = result.topology;

  std::vector<std::uint32_t> region_pop(topo.num_regions, 0);
  for (NodeId i = 0; i < topo.n; ++i) region_pop[topo.region[i]] += 1;
  RegionChurn region_churn;
  {
    RngStream rng(derive_seed(seed, Stream::churn_params));
    region_churn = derive_region_churn(
        rng, region_pop, cfg.churn.gap_mean_hours, cfg.churn.region_factor_min,
        cfg.churn.region_factor_max, cfg.churn.gap_shape_min,
        cfg.churn.gap_shape_max);
  }
  const SessionParams sessions{cfg.churn.session_mean_hours,
                               cfg.churn.session_shape};
  std::vector<ChurnTrace> traces;
  traces.reserve(topo.n);
  for (NodeId i = 0; i < topo.n; ++i) {
    RngStream rng(derive_seed(seed, Stream::churn_trace, i));
    const RegionId l = topo.region[i];
    traces.push_back(make_trace(rng, sessions,
                                region_churn.interarrival_mean_hours[l],
                                region_churn.interarrival_shape[l],
                                cfg.horizon_hours));
  }

  SimParams sp;
  sp.fpti_slots = cfg.fpti_slots;
  sp.ts_hours = cfg.ts_hours;
  sp.cost_factor = cfg.cost_factor;
  std::vector<NodeId> owners;
  {
    RngStream rng(derive_seed(seed, Stream::owners));
    owners = pick_owners(topo.n, cfg.num_owners, rng);
  }
  SimState world(topo, traces, sp, std::move(owners));
  {
    ResourceParams rp;
    rp.bandwidth_mean_kbps = cfg.bandwidth_mean_kbps;
    rp.bandwidth_cap_factor = cfg.bandwidth_max_factor;
    rp.storage_min = cfg.storage_min;
    rp.storage_max = cfg.storage_max;
    RngStream bw_rng(derive_seed(seed, Stream::bandwidth));
    RngStream storage_rng(derive_seed(seed, Stream::storage));
    sample_node_resources(world.nodes, bw_rng, storage_rng, rp);
  }

  const std::uint32_t horizon = cfg.horizon_slots();
  const std::uint32_t learning = cfg.learning_slot();
  const std::uint64_t budget = cfg.piggyback_budget != 0
                                   ? cfg.piggyback_budget
                                   : default_piggyback_budget(cfg.n);

  for (std::uint32_t slot = 0; slot < horizon; ++slot) {
    world.update_online(slot);

    const std::int64_t cycle = world.cycle();
    if (slot > 0 && slot % cfg.fpti_slots == 0) world.table.reset(cycle);

    if (cycle >= 1) {
      for (NodeId id : world.online_ids) {
        NodeState& node = world.nodes[id];
        if (node.uv_cycle >= cycle) continue;
        recompute_uv(node, traces[id], cfg.fpti_slots, cfg.ts_hours,
                     static_cast<std::uint32_t>(cycle));
        node.uv_cycle = cycle;
        if (!node.storage_free()) continue;
        if (world.table.report(id, topo.region[id], topo.virtual_of(id),
                               node.uv)) {
          world.ledger.log(OpClass::report, topo.n, cfg.cost_factor);
          node.last_report = cycle;
        }
      }
    }

    {
      RngStream rng(derive_seed(seed, Stream::piggyback, slot));
      simulate_piggyback(world, budget, rng);
    }

    if (slot == learning) do_placements(world, cfg, seed, degrees, result);

    if (slot >= learning) {
      const RequesterSet req = requester_set(topo, world.online_ids);
      for (const RunResult& run : result.runs) {
        for (std::size_t oi = 0; oi < world.owners.size(); ++oi) {
          const ReplicationPlan& plan = run.plans[oi];
          const OwnerSlotMetrics m = owner_slot_metrics(
              topo, world.nodes, world.online, req, plan.replicas);
          PerSlotRow row;
          row.seed = seed;
          row.strategy = run.strategy;
          row.degree = run.degree;
          row.slot = slot;
          row.owner = world.owners[oi];
          row.unavailable = m.unavailable;
          row.online_replicas = m.online_replicas;
          if (m.mapped > 0) {
            row.has_avg = true;
            row.avg_bw_kbps = m.avg_bw_kbps;
            row.avg_delay_ms = m.avg_delay_ms;
            GroupMoments& g =
                result.summary[{static_cast<int>(run.strategy), run.degree}];
            g.bw.add(m.avg_bw_kbps);
            g.delay.add(m.avg_delay_ms);
          }
          result.rows.push_back(row);
        }
      }
    }
  }
  result.base = world.ledger;
  if (cfg.shared_world) {
    // Placement ops were logged on the shared world; keep them only in the
    // per-run deltas.
    for (const RunResult& run : result.runs) {
      for (std::size_t i = 0; i < kOpClasses; ++i) {
        result.base.count[i] -= run.placement.count[i];
        result.base.messages[i] -= run.placement.messages[i];
      }
    }
  }
  return result;
}

namespace {

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

CostLedger combined_ledger(const CostLedger& base, const CostLedger& delta) {
  CostLedger total = base;
  for (std::size_t i = 0; i < kOpClasses; ++i) {
    total.count[i] += delta.count[i];
    total.messages[i] += delta.messages[i];
  }
  return total;
}

}  // namespace

void write_scenario_outputs(const ScenarioResult& result,
                            const std::string& out_dir, const std::string& tag) {
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  {
    auto out = open_out(dir / ("topology_s" + std::to_string(result.seed) + ".csv"));
    dump_topology(result.topology, out);
  }
  {
    auto out = open_out(dir / ("perslot_" + tag + ".csv"));
    write_perslot_csv(result.rows, out);
  }
  {
    auto out = open_out(dir / ("plans_" + tag + ".jsonl"));
    for (const RunResult& run : result.runs) dump_plans(run.plans, out);
  }
  for (const RunResult& run : result.runs) {
    const std::string name = "ledger_s" + std::to_string(result.seed) + "_" +
                             strategy_name(run.strategy) + "_r" +
                             std::to_string(run.degree) + ".csv";
    auto out = open_out(dir / name);
    dump_ledger(combined_ledger(result.base, run.placement), out);
  }
}

void write_summary_outputs(const SummaryMap& summary,
                           const std::string& out_dir) {
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  {
    auto out = open_out(dir / "summary.csv");
    write_summary_csv(summary, out);
  }
  {
    auto out = open_out(dir / "summary.json");
    write_summary_json(summary, out);
  }
}

SweepResult run_sweep(const ScenarioConfig& cfg, const std::string& out_dir) {
  SweepResult sweep;
  for (std::uint64_t seed : cfg.seeds) {
    for (std::uint32_t degree : cfg.degrees) {
      ScenarioResult result = run_scenario(cfg, seed, {degree});
      const std::string tag =
          "s" + std::to_string(seed) + "_r" + std::to_string(degree);
      write_scenario_outputs(result, out_dir, tag);
      merge_summary(sweep.summary, result.summary);
      sweep.isolation_ok = sweep.isolation_ok && result.isolation_ok;
    }
  }
  write_summary_outputs(sweep.summary, out_dir);
  return sweep;
}

}  // namespace repsim
