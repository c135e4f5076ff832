#pragma once

#include <iosfwd>
#include <string>

#include "vortexbody/finite_eps.hpp"
#include "vortexbody/limit_dynamics.hpp"

namespace vortexbody {

/// Trajectory writers. One record per sample; numbers carry 17 significant
/// digits so downstream diffs detect drift. Formats: "jsonl" (one JSON
/// object per line) and "csv" (flattened columns, fixed blob count).
void write_trajectory(std::ostream& out, const limit::Trajectory& traj,
                      const std::string& format);
void write_trajectory(std::ostream& out, const eps::Trajectory& traj, const std::string& format);

void write_trajectory_file(const std::string& path, const limit::Trajectory& traj,
                           const std::string& format);
void write_trajectory_file(const std::string& path, const eps::Trajectory& traj,
                           const std::string& format);

}  // namespace vortexbody
