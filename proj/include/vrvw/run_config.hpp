#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "vrvw/bounds.hpp"
#include "vrvw/solver.hpp"

namespace vrvw {

/// Raised for malformed or out-of-contract configuration input; the CLI maps
/// it to exit code 64.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Batch-run configuration.  JSON schema (unknown keys rejected everywhere):
///   {"grid":   {"n": int >= 2, "h": > 0},
///    "params": {"t": > 0, "tau": 3x3 array},
///    "solver": {"max_iters": >= 0, "tol": > 0, "seed": uint,
///               "init_amplitude": >= 0},
///    "bounds": {"lambda_x": >= 0, "slack": >= 0}}
/// "solver" and "bounds" are optional and default as below.
struct RunConfig {
  TorusGrid grid;
  PerturbationParams params;
  SolveOptions solver;
  double init_amplitude = 0.1;
  double lambda_x = 0.0;
  double slack = 0.05;
};

RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);

}  // namespace vrvw
