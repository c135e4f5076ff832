#include "vortexbody/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vortexbody/config.hpp"
#include "vortexbody/finite_eps.hpp"
#include "vortexbody/limit_dynamics.hpp"
#include "vortexbody/trajectory_io.hpp"
#include "vortexbody/verify.hpp"

namespace vortexbody {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

json halt_diagnostic(const std::string& kind, const std::string& message) {
  return json{{"error", kind}, {"message", message}};
}

limit::LimitState limit_initial(const ScenarioConfig& c) {
  limit::LimitState s;
  s.h = c.h0;
  s.xi = c.m * c.ell0;
  s.field.blobs = c.blobs;
  return s;
}

eps::EpsState eps_initial(const ScenarioConfig& c) {
  eps::EpsState s;
  s.ell = c.ell0;
  s.r = c.r0;
  s.h = c.h0;
  s.field.blobs = c.blobs;
  for (auto& b : s.field.blobs) b.position -= c.h0;
  return s;
}

int cmd_simulate(const std::string& config_path) {
  const ScenarioConfig c = load_config(config_path);
  if (c.epsilon) {
    BodyGeometry geom{c.make_map(), *c.epsilon};
    eps::EpsParams p;
    p.m = c.m;
    p.J0 = c.J0;
    p.gamma = c.gamma;
    p.dt = c.dt;
    p.boundary_nodes = c.boundary_nodes;
    const eps::Trajectory traj = eps::run_coupled(eps_initial(c), geom, p, c.T, c.output_stride);
    write_trajectory_file(c.output_path, traj, c.output_format);
    const auto& last = traj.samples.back();
    std::cout << "coupled run: epsilon=" << *c.epsilon << " T=" << c.T << " steps="
              << std::llround(c.T / c.dt) << " final h=(" << last.h.x() << ", " << last.h.y()
              << ") -> " << c.output_path << "\n";
  } else {
    limit::LimitParams p;
    p.m = c.m;
    p.gamma = c.gamma;
    p.dt = c.dt;
    const limit::Trajectory traj = limit::run(limit_initial(c), p, c.T, c.output_stride);
    write_trajectory_file(c.output_path, traj, c.output_format);
    const auto& last = traj.samples.back();
    std::cout << "limit run: T=" << c.T << " steps=" << std::llround(c.T / c.dt)
              << " final h=(" << last.h.x() << ", " << last.h.y() << ") -> " << c.output_path
              << "\n";
  }
  return kExitOk;
}

int cmd_verify(const VerifyOptions& options, bool as_json) {
  const std::vector<CheckResult> results = run_identity_suite(options);
  bool all_pass = true;
  if (as_json) {
    json out = json::array();
    for (const auto& r : results) {
      out.push_back({{"name", r.name},
                     {"residual", r.residual},
                     {"threshold", r.threshold},
                     {"pass", r.pass}});
      all_pass = all_pass && r.pass;
    }
    std::cout << out.dump(2) << "\n";
  } else {
    std::printf("%-40s %-12s %-12s %s\n", "check", "residual", "threshold", "status");
    for (const auto& r : results) {
      std::printf("%-40s %-12.3e %-12.3e %s\n", r.name.c_str(), r.residual, r.threshold,
                  r.pass ? "pass" : "FAIL");
      all_pass = all_pass && r.pass;
    }
    std::printf("%zu checks, %s\n", results.size(), all_pass ? "all passed" : "FAILURES");
  }
  return all_pass ? kExitOk : kExitVerifyFailed;
}

int cmd_convergence(const std::string& config_path, bool as_json) {
  const ScenarioConfig c = load_config(config_path);
  if (c.epsilon_list.empty()) {
    throw ConfigError("epsilon_list: required for the convergence study");
  }
  if (c.shape != "disk") {
    throw ConfigError("shape: the convergence study is restricted to the disk");
  }
  eps::EpsParams p;
  p.m = c.m;
  p.J0 = c.J0;
  p.gamma = c.gamma;
  p.dt = c.dt;
  p.boundary_nodes = c.boundary_nodes;
  eps::MatchedInitialData data;
  data.ell0 = c.ell0;
  data.r0 = c.r0;
  data.h0 = c.h0;
  data.field.blobs = c.blobs;
  const auto rows = eps::convergence_study(data, c.epsilon_list, p, c.T, c.output_stride);

  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"epsilon", r.epsilon},
                   {"sup_error", r.sup_error},
                   {"final_error", r.final_error},
                   {"energy_drift", r.energy_drift},
                   {"max_eps_r", r.max_eps_r}});
  }
  {
    std::ofstream f(c.output_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + c.output_path);
    f << out.dump(2) << "\n";
  }
  if (as_json) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::printf("%-10s %-14s %-14s %-14s %-14s\n", "epsilon", "sup_error", "final_error",
                "energy_drift", "max_eps_r");
    for (const auto& r : rows) {
      std::printf("%-10g %-14.6e %-14.6e %-14.6e %-14.6e\n", r.epsilon, r.sup_error,
                  r.final_error, r.energy_drift, r.max_eps_r);
    }
  }
  return kExitOk;
}

int cmd_forces(const std::string& config_path) {
  const ScenarioConfig c = load_config(config_path);
  if (!c.epsilon) throw ConfigError("epsilon: required for a one-shot force evaluation");
  BodyGeometry geom{c.make_map(), *c.epsilon};
  eps::EpsParams p;
  p.m = c.m;
  p.J0 = c.J0;
  p.gamma = c.gamma;
  p.boundary_nodes = c.boundary_nodes;
  const eps::ForceBreakdown fb = eps::force_terms(eps_initial(c), geom, p);
  auto v3 = [](const Vec3& v) { return json{v(0), v(1), v(2)}; };
  json out{{"B", v3(fb.B)},          {"C_a", v3(fb.C_a)},
           {"C_b", v3(fb.C_b)},      {"C_c", v3(fb.C_c)},
           {"C_d", v3(fb.C_d)},      {"accel", v3(fb.accel)},
           {"total_force", {fb.total_force.x(), fb.total_force.y()}},
           {"total_torque", fb.total_torque},
           {"blasius_defect", fb.blasius_defect}};
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"planar fluid-solid interaction: vortex blobs around a small rigid body"};
  app.require_subcommand(1);

  int threads = 1;
  app.add_option("--threads", threads, "thread budget for inner loops")->check(CLI::Range(1, 256));

  std::string config_path;
  bool as_json = false;

  auto* simulate = app.add_subcommand("simulate", "integrate a configured scenario");
  simulate->add_option("--config", config_path, "scenario file (JSON)")->required();

  VerifyOptions vopt;
  auto* verify = app.add_subcommand("verify", "run the identity suite");
  verify->add_option("--shape", vopt.shape, "disk or joukowski")
      ->check(CLI::IsMember({"disk", "joukowski"}));
  verify->add_option("--a", vopt.a, "joukowski parameter");
  verify->add_option("--tol", vopt.tol_override, "override every threshold");
  verify->add_option("--seed", vopt.seed, "seed for randomized checks");
  verify->add_flag("--json", as_json, "machine-readable output");

  auto* convergence = app.add_subcommand("convergence", "small-size sweep against the limit");
  convergence->add_option("--config", config_path, "scenario file (JSON)")->required();
  convergence->add_flag("--json", as_json, "print the JSON report");

  auto* forces = app.add_subcommand("forces", "one-shot force breakdown for a state");
  forces->add_option("--config", config_path, "scenario file (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  set_thread_budget(threads);

  try {
    if (simulate->parsed()) return cmd_simulate(config_path);
    if (verify->parsed()) return cmd_verify(vopt, as_json);
    if (convergence->parsed()) return cmd_convergence(config_path, as_json);
    if (forces->parsed()) return cmd_forces(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const CollisionError& e) {
    std::cerr << halt_diagnostic("collision", e.what()).dump() << "\n";
    return kExitRuntime;
  } catch (const SingularityError& e) {
    std::cerr << halt_diagnostic("singularity", e.what()).dump() << "\n";
    return kExitRuntime;
  } catch (const InsideBodyError& e) {
    std::cerr << halt_diagnostic("inside_body", e.what()).dump() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << halt_diagnostic("runtime", e.what()).dump() << "\n";
    return kExitRuntime;
  }
  return kExitConfig;
}

}  // namespace vortexbody
