#pragma once

#include <stdexcept>
#include <string>

namespace repsim {

// Bad user input (config file, CLI values). CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Infeasible optimization input (degree exceeds populated virtual nodes, ...).
struct RwdError : std::runtime_error {
  explicit RwdError(const std::string& what) : std::runtime_error(what) {}
};

// A strategy cannot produce any plan (nothing learned yet, empty knowledge
// base, infeasible degree). The simulation records a full shortfall and
// continues.
struct PlanError : std::runtime_error {
  explicit PlanError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace repsim
