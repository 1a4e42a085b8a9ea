#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "vrvw/algebra_check.hpp"
#include "vrvw/bounds.hpp"
#include "vrvw/field_io.hpp"
#include "vrvw/run_config.hpp"
#include "vrvw/scan.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitNoConvergence = 2;
constexpr int kExitUsage = 64;

void apply_thread_cap()
{
  if (const char* env = std::getenv("VRVW_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0)
      Eigen::setNbThreads(n);
  }
}

int run_verify_algebra(int trials, std::uint64_t seed, const std::string& inject_bug)
{
  const auto results = vrvw::run_algebra_checks(trials, seed, inject_bug);
  bool all_pass = true;
  for (const auto& r : results) {
    std::printf("%-34s max_err=%11.4e  %s\n", r.name.c_str(), r.max_err,
                r.pass ? "PASS" : "FAIL");
    all_pass = all_pass && r.pass;
  }
  std::printf("%s: %zu identities on %d samples (seed %llu)\n",
              all_pass ? "OK" : "FAILED", results.size(), trials,
              static_cast<unsigned long long>(seed));
  return all_pass ? kExitOk : kExitVerifyFailure;
}

nlohmann::json report_payload(const vrvw::SolveReport& rep)
{
  // wall time deliberately excluded so reruns are byte-identical
  return nlohmann::json{{"iterations", rep.iterations},
                        {"residual_l2", rep.residual_l2},
                        {"energy", rep.energy},
                        {"reason", rep.reason},
                        {"seed", rep.seed}};
}

int run_solve(const std::string& config_path, const std::string& out_path,
              const std::string& report_path)
{
  const vrvw::RunConfig cfg = vrvw::load_run_config(config_path);
  const vrvw::Configuration init =
      vrvw::random_configuration(cfg.grid, cfg.init_amplitude, cfg.solver.seed);
  const auto [sol, rep] = vrvw::solve(cfg.params, init, nullptr, cfg.solver);

  if (!out_path.empty()) {
    vrvw::FieldFile file;
    vrvw::add_field(file, "A", "connection", sol.A);
    vrvw::add_field(file, "B", "plusform", sol.B);
    vrvw::save_fields(out_path, file);
  }
  if (!report_path.empty()) {
    std::ofstream os(report_path);
    if (!os)
      throw vrvw::config_error("cannot open report file '" + report_path + "' for writing");
    os << report_payload(rep).dump(2) << "\n";
  }
  std::fprintf(stderr, "solve: %s after %d iterations, residual %.3e\n", rep.reason.c_str(),
               rep.iterations, rep.residual_l2);
  return rep.reason == "converged" ? kExitOk : kExitNoConvergence;
}

int run_scan(const std::string& config_path, double t_min, double t_max, int steps,
             const std::string& csv_path)
{
  const vrvw::RunConfig cfg = vrvw::load_run_config(config_path);
  const auto rows = vrvw::scan_t(cfg, t_min, t_max, steps);
  const std::string csv = vrvw::scan_csv(rows);
  if (csv_path.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    std::ofstream os(csv_path, std::ios::binary);
    if (!os)
      throw vrvw::config_error("cannot open csv file '" + csv_path + "' for writing");
    os << csv;
  }
  int converged = 0;
  for (const auto& r : rows)
    converged += r.converged ? 1 : 0;
  std::fprintf(stderr, "scan: %d/%zu rows converged\n", converged, rows.size());
  return converged > 0 ? kExitOk : kExitNoConvergence;
}

int run_bounds(const vrvw::BoundsParams& bp, long long l)
{
  nlohmann::json out;
  out["c_upper"] = vrvw::c_upper(bp);
  out["k_upper"] = vrvw::k_upper(bp);
  out["bubble_bound"] = vrvw::bubble_bound(bp);
  out["curvature_energy_cap"] = vrvw::curvature_energy_cap(bp, l);
  out["f_plus_energy_cap"] = vrvw::f_plus_energy_cap(bp);
  if (bp.lambda_x > 0.0) {
    out["t_threshold"] = vrvw::t_threshold(bp);
    out["sharp_cap"] = vrvw::sharp_cap(bp);
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_index(double kappa, int b1, int b2plus)
{
  nlohmann::json out{{"kappa", kappa},
                     {"b1", b1},
                     {"b2plus", b2plus},
                     {"index", vrvw::index_formula(kappa, b1, b2plus)}};
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv)
{
  apply_thread_cap();

  CLI::App app{"Numerical laboratory for the perturbed variated reduced Vafa-Witten "
               "equations on the flat 4-torus"};
  app.require_subcommand(1);

  int exit_code = kExitOk;

  // verify-algebra
  int trials = 1000;
  std::uint64_t seed = 1;
  std::string inject_bug;
  auto* verify = app.add_subcommand("verify-algebra", "run the pointwise algebra identity battery");
  verify->add_option("--trials", trials, "number of random samples")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "RNG seed");
  verify->add_option("--inject-bug", inject_bug, "testing hook: break the named identity")
      ->check(CLI::IsMember({"dot_bracket_sign"}));
  verify->callback([&] { exit_code = run_verify_algebra(trials, seed, inject_bug); });

  // solve
  std::string config_path, out_path, report_path;
  auto* solve_cmd = app.add_subcommand("solve", "homogeneous solve from a random initial guess");
  solve_cmd->add_option("--config", config_path, "JSON run configuration")->required();
  solve_cmd->add_option("--out", out_path, "output field file");
  solve_cmd->add_option("--report", report_path, "output JSON solve report");
  solve_cmd->callback([&] { exit_code = run_solve(config_path, out_path, report_path); });

  // scan-t
  std::string scan_config, csv_path;
  double t_min = 1.0, t_max = 1e4;
  int steps = 8;
  auto* scan_cmd = app.add_subcommand("scan-t", "homogeneous solves over a log-spaced t grid");
  scan_cmd->add_option("--config", scan_config, "JSON run configuration")->required();
  scan_cmd->add_option("--t-min", t_min, "smallest t")->required();
  scan_cmd->add_option("--t-max", t_max, "largest t")->required();
  scan_cmd->add_option("--steps", steps, "number of t values (>= 2)")->required();
  scan_cmd->add_option("--csv", csv_path, "output CSV path (stdout if omitted)");
  scan_cmd->callback([&] { exit_code = run_scan(scan_config, t_min, t_max, steps, csv_path); });

  // bounds
  vrvw::BoundsParams bp;
  long long bubbles = 0;
  auto* bounds_cmd = app.add_subcommand("bounds", "evaluate the a priori bound formulas");
  bounds_cmd->add_option("--t", bp.t, "equation strength t > 0")->required();
  bounds_cmd->add_option("--lambda-tau", bp.lambda_tau, "quintic majorant constant");
  bounds_cmd->add_option("--lambda-x", bp.lambda_x, "curvature-term constant (0 on flat T^4)");
  bounds_cmd->add_option("--vol", bp.vol, "manifold volume");
  bounds_cmd->add_option("--m", bp.m, "characteristic number");
  bounds_cmd->add_option("--l", bubbles, "bubble count for the energy cap");
  bounds_cmd->callback([&] { exit_code = run_bounds(bp, bubbles); });

  // index
  double kappa = 0.0;
  int b1 = 0, b2plus = 0;
  auto* index_cmd = app.add_subcommand("index", "expected dimension 8k - 3(1 - b1 + b2+)");
  index_cmd->add_option("--kappa", kappa, "characteristic number")->required();
  index_cmd->add_option("--b1", b1, "first Betti number")->required();
  index_cmd->add_option("--b2plus", b2plus, "self-dual second Betti number")->required();
  index_cmd->callback([&] { exit_code = run_index(kappa, b1, b2plus); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  } catch (const vrvw::config_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return exit_code;
}
