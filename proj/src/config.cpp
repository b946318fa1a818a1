#include "repsim/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "repsim/errors.hpp"

namespace repsim {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const std::size_t pos = s.find(',');
    if (pos == std::string_view::npos) {
      out.push_back(trim(s));
      break;
    }
    out.push_back(trim(s.substr(0, pos)));
    s.remove_prefix(pos + 1);
  }
  return out;
}

[[noreturn]] void bad(const std::string& key, const std::string& why) {
  throw ConfigError("config key '" + key + "': " + why);
}

double parse_real(const std::string& key, std::string_view v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(std::string(v), &used);
    if (used != v.size()) bad(key, "trailing characters in number");
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    bad(key, "expected a number, got '" + std::string(v) + "'");
  }
}

std::uint64_t parse_uint(const std::string& key, std::string_view v) {
  try {
    std::size_t used = 0;
    const unsigned long long x = std::stoull(std::string(v), &used);
    if (used != v.size()) bad(key, "trailing characters in integer");
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    bad(key, "expected a non-negative integer, got '" + std::string(v) + "'");
  }
}

bool parse_bool(const std::string& key, std::string_view v) {
  if (v == "true") return true;
  if (v == "false") return false;
  bad(key, "expected true or false, got '" + std::string(v) + "'");
}

// Handlers keyed by the flat dotted name.
using Setter = std::function<void(ScenarioConfig&, const std::string&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = [] {
    std::map<std::string, Setter, std::less<>> t;
    auto u32 = [&t](const char* key, std::uint32_t ScenarioConfig::* field) {
      t[key] = [field](ScenarioConfig& c, const std::string& k, std::string_view v) {
        c.*field = static_cast<std::uint32_t>(parse_uint(k, v));
      };
    };
    auto real = [&t](const char* key, double ScenarioConfig::* field) {
      t[key] = [field](ScenarioConfig& c, const std::string& k, std::string_view v) {
        c.*field = parse_real(k, v);
      };
    };
    auto churn_real = [&t](const char* key, double ChurnConfig::* field) {
      t[key] = [field](ScenarioConfig& c, const std::string& k, std::string_view v) {
        c.churn.*field = parse_real(k, v);
      };
    };
    auto boolean = [&t](const char* key, bool ScenarioConfig::* field) {
      t[key] = [field](ScenarioConfig& c, const std::string& k, std::string_view v) {
        c.*field = parse_bool(k, v);
      };
    };
    u32("n", &ScenarioConfig::n);
    u32("landmarks", &ScenarioConfig::landmarks);
    u32("vs_size", &ScenarioConfig::vs_size);
    u32("name_bits", &ScenarioConfig::name_bits);
    real("rtt_scale_ms", &ScenarioConfig::rtt_scale_ms);
    u32("fpti_slots", &ScenarioConfig::fpti_slots);
    real("ts_hours", &ScenarioConfig::ts_hours);
    real("horizon_hours", &ScenarioConfig::horizon_hours);
    real("learning_hours", &ScenarioConfig::learning_hours);
    u32("alpha", &ScenarioConfig::alpha);
    u32("num_owners", &ScenarioConfig::num_owners);
    boolean("exclude_owner", &ScenarioConfig::exclude_owner);
    boolean("shared_world", &ScenarioConfig::shared_world);
    churn_real("churn.session_mean_hours", &ChurnConfig::session_mean_hours);
    churn_real("churn.session_shape", &ChurnConfig::session_shape);
    churn_real("churn.gap_mean_hours", &ChurnConfig::gap_mean_hours);
    churn_real("churn.region_factor_min", &ChurnConfig::region_factor_min);
    churn_real("churn.region_factor_max", &ChurnConfig::region_factor_max);
    churn_real("churn.gap_shape_min", &ChurnConfig::gap_shape_min);
    churn_real("churn.gap_shape_max", &ChurnConfig::gap_shape_max);
    real("bandwidth.mean_kbps", &ScenarioConfig::bandwidth_mean_kbps);
    real("bandwidth.max_factor", &ScenarioConfig::bandwidth_max_factor);
    t["storage.min"] = [](ScenarioConfig& c, const std::string& k, std::string_view v) {
      c.storage_min = static_cast<int>(parse_uint(k, v));
    };
    t["storage.max"] = [](ScenarioConfig& c, const std::string& k, std::string_view v) {
      c.storage_max = static_cast<int>(parse_uint(k, v));
    };
    t["piggyback_budget"] = [](ScenarioConfig& c, const std::string& k,
                               std::string_view v) {
      c.piggyback_budget = parse_uint(k, v);
    };
    real("cost_factor", &ScenarioConfig::cost_factor);
    t["degrees"] = [](ScenarioConfig& c, const std::string& k, std::string_view v) {
      c.degrees.clear();
      for (std::string_view item : split_list(v)) {
        c.degrees.push_back(static_cast<std::uint32_t>(parse_uint(k, item)));
      }
    };
    t["strategies"] = [](ScenarioConfig& c, const std::string& k, std::string_view v) {
      c.strategies.clear();
      for (std::string_view item : split_list(v)) {
        const auto s = strategy_from_name(item);
        if (!s) bad(k, "unknown strategy '" + std::string(item) + "'");
        c.strategies.push_back(*s);
      }
    };
    t["seeds"] = [](ScenarioConfig& c, const std::string& k, std::string_view v) {
      c.seeds.clear();
      for (std::string_view item : split_list(v)) {
        c.seeds.push_back(parse_uint(k, item));
      }
    };
    t["out_dir"] = [](ScenarioConfig& c, const std::string&, std::string_view v) {
      c.out_dir = std::string(v);
    };
    return t;
  }();
  return table;
}

}  // namespace

ScenarioConfig parse_config_text(std::string_view text) {
  ScenarioConfig cfg;
  std::size_t lineno = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line =
        eol == std::string_view::npos ? text : text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key = value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" +
                        key + "'");
    }
    it->second(cfg, key, value);
  }
  return cfg;
}

ScenarioConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

namespace {

std::uint32_t slot_count(const std::string& key, double hours, double ts) {
  const double slots = hours / ts;
  const double rounded = std::round(slots);
  if (std::abs(slots - rounded) > 1e-9 || rounded < 0) {
    throw ConfigError("config key '" + key + "': " + std::to_string(hours) +
                      " is not a whole number of " + std::to_string(ts) +
                      "-hour slots");
  }
  return static_cast<std::uint32_t>(rounded);
}

}  // namespace

std::uint32_t ScenarioConfig::horizon_slots() const {
  return slot_count("horizon_hours", horizon_hours, ts_hours);
}

std::uint32_t ScenarioConfig::learning_slot() const {
  return slot_count("learning_hours", learning_hours, ts_hours);
}

void validate_config(const ScenarioConfig& cfg) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
  };
  require(cfg.n >= 2, "n must be >= 2");
  require(cfg.landmarks >= 1 && cfg.landmarks <= cfg.n,
          "landmarks must be in [1, n]");
  require(cfg.rtt_scale_ms > 0, "rtt_scale_ms must be positive");
  require(cfg.fpti_slots >= 1, "fpti_slots must be >= 1");
  require(cfg.ts_hours > 0, "ts_hours must be positive");
  require(cfg.horizon_hours > 0, "horizon_hours must be positive");
  require(cfg.learning_hours >= 0, "learning_hours must be non-negative");
  require(cfg.learning_hours < cfg.horizon_hours,
          "learning_hours must be below horizon_hours");
  require(cfg.alpha >= 1, "alpha must be >= 1");
  require(cfg.num_owners >= 1 && cfg.num_owners <= cfg.n,
          "num_owners must be in [1, n]");
  require(!cfg.degrees.empty(), "degrees must not be empty");
  for (std::uint32_t d : cfg.degrees) require(d >= 1, "degrees must be >= 1");
  require(!cfg.strategies.empty(), "strategies must not be empty");
  for (std::size_t i = 0; i < cfg.strategies.size(); ++i) {
    for (std::size_t j = i + 1; j < cfg.strategies.size(); ++j) {
      require(cfg.strategies[i] != cfg.strategies[j],
              "strategies must not repeat");
    }
  }
  require(cfg.churn.session_mean_hours > 0, "session mean must be positive");
  require(cfg.churn.session_shape > 0, "session shape must be positive");
  require(cfg.churn.gap_mean_hours > 0, "gap mean must be positive");
  require(cfg.churn.region_factor_min > 0 &&
              cfg.churn.region_factor_min <= cfg.churn.region_factor_max,
          "region factor range must be positive and ordered");
  require(cfg.churn.gap_shape_min > 0 &&
              cfg.churn.gap_shape_min <= cfg.churn.gap_shape_max,
          "gap shape range must be positive and ordered");
  require(cfg.bandwidth_mean_kbps > 0, "bandwidth mean must be positive");
  require(cfg.bandwidth_max_factor >= 1, "bandwidth max factor must be >= 1");
  require(cfg.storage_min >= 1 && cfg.storage_min <= cfg.storage_max,
          "storage range must be ordered and >= 1");
  require(cfg.cost_factor > 0, "cost_factor must be positive");
  require(!cfg.seeds.empty(), "seeds must not be empty");
  // Also checks hour/slot divisibility.
  const std::uint32_t horizon = cfg.horizon_slots();
  const std::uint32_t learning = cfg.learning_slot();
  require(learning < horizon, "learning phase must end before the horizon");
}

}  // namespace repsim
