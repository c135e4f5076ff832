#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vortexbody/conformal.hpp"
#include "vortexbody/kernels.hpp"
#include "vortexbody/types.hpp"

namespace vortexbody {

/// Declarative scenario description. Blob positions are lab-frame initial
/// data; the finite-size runs subtract h0 to move into the body frame.
struct ScenarioConfig {
  std::string shape = "disk";  // "disk" or "joukowski"
  double a = 0.0;              // joukowski parameter

  std::optional<double> epsilon;       // present: finite-size coupled run
  std::vector<double> epsilon_list;    // used by the convergence study

  double m = 1.0;
  double J0 = 1.0;
  double gamma = 0.0;
  Vec2 ell0 = Vec2::Zero();
  double r0 = 0.0;
  Vec2 h0 = Vec2::Zero();
  std::vector<VortexBlob> blobs;

  double dt = 1e-3;
  double T = 1.0;
  int output_stride = 10;
  int boundary_nodes = 256;

  std::string output_path = "trajectory.jsonl";
  std::string output_format = "jsonl";  // "jsonl" or "csv"
  unsigned long seed = 0;

  ConformalMap make_map() const;
};

/// Parse and validate; throws ConfigError naming the offending field.
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::string& path);
std::string serialize_config(const ScenarioConfig& config);

}  // namespace vortexbody
