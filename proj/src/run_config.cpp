#include "vrvw/run_config.hpp"

#include <fstream>

namespace vrvw {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed)
{
  if (!obj.is_object())
    throw config_error("config: '" + where + "' must be an object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : allowed)
      known = known || item.key() == k;
    if (!known)
      throw config_error("config: unknown key '" + item.key() + "' in " + where);
  }
}

template <typename T>
T get_required(const json& obj, const std::string& where, const char* key)
{
  if (!obj.contains(key))
    throw config_error("config: missing key '" + std::string(key) + "' in " + where);
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw config_error("config: key '" + std::string(key) + "' in " + where + " has the wrong type");
  }
}

template <typename T>
T get_optional(const json& obj, const std::string& where, const char* key, T fallback)
{
  if (!obj.contains(key))
    return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw config_error("config: key '" + std::string(key) + "' in " + where + " has the wrong type");
  }
}

Eigen::Matrix3d parse_tau(const json& j)
{
  if (!j.is_array() || j.size() != 3)
    throw config_error("config: params.tau must be a 3x3 array");
  Eigen::Matrix3d tau;
  for (int r = 0; r < 3; ++r) {
    const auto& row = j.at(r);
    if (!row.is_array() || row.size() != 3)
      throw config_error("config: params.tau must be a 3x3 array");
    for (int c = 0; c < 3; ++c) {
      if (!row.at(c).is_number())
        throw config_error("config: params.tau entries must be numbers");
      tau(r, c) = row.at(c).get<double>();
    }
  }
  return tau;
}

}  // namespace

RunConfig parse_run_config(const nlohmann::json& j)
{
  check_keys(j, "the top level", {"grid", "params", "solver", "bounds"});
  RunConfig cfg;

  if (!j.contains("grid"))
    throw config_error("config: missing section 'grid'");
  const json& grid = j.at("grid");
  check_keys(grid, "grid", {"n", "h"});
  cfg.grid.n = get_required<int>(grid, "grid", "n");
  cfg.grid.h = get_required<double>(grid, "grid", "h");
  try {
    require_valid(cfg.grid);
  } catch (const std::exception& e) {
    throw config_error(std::string("config: ") + e.what());
  }

  if (!j.contains("params"))
    throw config_error("config: missing section 'params'");
  const json& params = j.at("params");
  check_keys(params, "params", {"t", "tau"});
  cfg.params.t = get_required<double>(params, "params", "t");
  if (!params.contains("tau"))
    throw config_error("config: missing key 'tau' in params");
  cfg.params.tau = parse_tau(params.at("tau"));
  try {
    require_valid(cfg.params);
  } catch (const std::exception& e) {
    throw config_error(std::string("config: ") + e.what());
  }

  if (j.contains("solver")) {
    const json& solver = j.at("solver");
    check_keys(solver, "solver", {"max_iters", "tol", "seed", "init_amplitude"});
    cfg.solver.max_iters = get_optional<int>(solver, "solver", "max_iters", cfg.solver.max_iters);
    cfg.solver.tol = get_optional<double>(solver, "solver", "tol", cfg.solver.tol);
    cfg.solver.seed = get_optional<std::uint64_t>(solver, "solver", "seed", cfg.solver.seed);
    cfg.init_amplitude =
        get_optional<double>(solver, "solver", "init_amplitude", cfg.init_amplitude);
    if (cfg.solver.max_iters < 0)
      throw config_error("config: solver.max_iters must be >= 0");
    if (!(cfg.solver.tol > 0.0))
      throw config_error("config: solver.tol must be > 0");
    if (!(cfg.init_amplitude >= 0.0))
      throw config_error("config: solver.init_amplitude must be >= 0");
  }

  if (j.contains("bounds")) {
    const json& bounds = j.at("bounds");
    check_keys(bounds, "bounds", {"lambda_x", "slack"});
    cfg.lambda_x = get_optional<double>(bounds, "bounds", "lambda_x", cfg.lambda_x);
    cfg.slack = get_optional<double>(bounds, "bounds", "slack", cfg.slack);
    if (!(cfg.lambda_x >= 0.0))
      throw config_error("config: bounds.lambda_x must be >= 0");
    if (!(cfg.slack >= 0.0))
      throw config_error("config: bounds.slack must be >= 0");
  }

  return cfg;
}

RunConfig load_run_config(const std::string& path)
{
  std::ifstream is(path);
  if (!is)
    throw config_error("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw config_error("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_run_config(j);
}

}  // namespace vrvw
