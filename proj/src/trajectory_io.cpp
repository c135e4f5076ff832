#include "vortexbody/trajectory_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

namespace vortexbody {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string pair(const Vec2& v) { return "[" + num(v.x()) + "," + num(v.y()) + "]"; }

std::string triple(const Vec3& v) {
  return "[" + num(v(0)) + "," + num(v(1)) + "," + num(v(2)) + "]";
}

void append_blobs_json(std::string& line, const std::vector<Vec2>& positions,
                       const std::vector<double>& strengths) {
  line += "\"blobs\":[";
  for (std::size_t j = 0; j < positions.size(); ++j) {
    if (j) line += ",";
    line += "{\"x\":" + pair(positions[j]) + ",\"strength\":" + num(strengths[j]) + "}";
  }
  line += "]";
}

void check(std::ostream& out) {
  if (!out) throw std::runtime_error("trajectory writer: stream failure");
}

}  // namespace

void write_trajectory(std::ostream& out, const limit::Trajectory& traj,
                      const std::string& format) {
  if (format == "jsonl") {
    for (const auto& s : traj.samples) {
      std::string line = "{\"t\":" + num(s.t) + ",\"h\":" + pair(s.h) +
                         ",\"xi\":" + pair(s.xi) + ",\"H\":" + num(s.hamiltonian) +
                         ",\"support_radius\":" + num(s.support_radius) +
                         ",\"max_blob_speed\":" + num(s.max_blob_speed) +
                         ",\"center_of_vorticity\":" + pair(s.center_of_vorticity) + ",";
      append_blobs_json(line, s.blob_positions, traj.strengths);
      out << line << "}\n";
    }
  } else if (format == "csv") {
    out << "t,h_x,h_y,xi_x,xi_y,H,support_radius,max_blob_speed,cov_x,cov_y";
    for (std::size_t j = 0; j < traj.strengths.size(); ++j) {
      out << ",blob" << j << "_x,blob" << j << "_y";
    }
    out << "\n";
    for (const auto& s : traj.samples) {
      out << num(s.t) << "," << num(s.h.x()) << "," << num(s.h.y()) << "," << num(s.xi.x())
          << "," << num(s.xi.y()) << "," << num(s.hamiltonian) << ","
          << num(s.support_radius) << "," << num(s.max_blob_speed) << ","
          << num(s.center_of_vorticity.x()) << "," << num(s.center_of_vorticity.y());
      for (const auto& p : s.blob_positions) out << "," << num(p.x()) << "," << num(p.y());
      out << "\n";
    }
  } else {
    throw std::invalid_argument("write_trajectory: unknown format " + format);
  }
  check(out);
}

void write_trajectory(std::ostream& out, const eps::Trajectory& traj,
                      const std::string& format) {
  if (format == "jsonl") {
    for (const auto& s : traj.samples) {
      std::string line =
          "{\"t\":" + num(s.t) + ",\"h\":" + pair(s.h) + ",\"xi\":" + pair(s.xi) +
          ",\"ell\":" + pair(s.ell) + ",\"r\":" + num(s.r) + ",\"theta\":" + num(s.theta) +
          ",\"energy\":" + num(s.energy) + ",\"support_radius\":" + num(s.support_radius) +
          ",\"bound_speed\":" + num(s.bound_speed) +
          ",\"circulation\":" + num(s.circulation) + ",";
      append_blobs_json(line, s.blob_positions, traj.strengths);
      line += ",\"force\":{\"B\":" + triple(s.force.B) + ",\"C_a\":" + triple(s.force.C_a) +
              ",\"C_b\":" + triple(s.force.C_b) + ",\"C_c\":" + triple(s.force.C_c) +
              ",\"C_d\":" + triple(s.force.C_d) + ",\"accel\":" + triple(s.force.accel) +
              ",\"total_force\":" + pair(s.force.total_force) +
              ",\"total_torque\":" + num(s.force.total_torque) +
              ",\"blasius_defect\":" + num(s.force.blasius_defect) + "}";
      out << line << "}\n";
    }
  } else if (format == "csv") {
    out << "t,h_x,h_y,xi_x,xi_y,ell_x,ell_y,r,theta,energy,support_radius,bound_speed,"
           "circulation";
    for (std::size_t j = 0; j < traj.strengths.size(); ++j) {
      out << ",blob" << j << "_x,blob" << j << "_y";
    }
    out << ",B_1,B_2,B_3,Ca_1,Ca_2,Ca_3,Cb_1,Cb_2,Cb_3,Cc_1,Cc_2,Cc_3,Cd_1,Cd_2,Cd_3,"
           "accel_1,accel_2,accel_3,F_1,F_2,torque,blasius_defect\n";
    for (const auto& s : traj.samples) {
      out << num(s.t) << "," << num(s.h.x()) << "," << num(s.h.y()) << "," << num(s.xi.x())
          << "," << num(s.xi.y()) << "," << num(s.ell.x()) << "," << num(s.ell.y()) << ","
          << num(s.r) << "," << num(s.theta) << "," << num(s.energy) << ","
          << num(s.support_radius) << "," << num(s.bound_speed) << "," << num(s.circulation);
      for (const auto& p : s.blob_positions) out << "," << num(p.x()) << "," << num(p.y());
      const auto t3 = [&](const Vec3& v) {
        out << "," << num(v(0)) << "," << num(v(1)) << "," << num(v(2));
      };
      t3(s.force.B);
      t3(s.force.C_a);
      t3(s.force.C_b);
      t3(s.force.C_c);
      t3(s.force.C_d);
      t3(s.force.accel);
      out << "," << num(s.force.total_force.x()) << "," << num(s.force.total_force.y()) << ","
          << num(s.force.total_torque) << "," << num(s.force.blasius_defect) << "\n";
    }
  } else {
    throw std::invalid_argument("write_trajectory: unknown format " + format);
  }
  check(out);
}

namespace {

template <class Traj>
void write_file(const std::string& path, const Traj& traj, const std::string& format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  write_trajectory(out, traj, format);
}

}  // namespace

void write_trajectory_file(const std::string& path, const limit::Trajectory& traj,
                           const std::string& format) {
  write_file(path, traj, format);
}

void write_trajectory_file(const std::string& path, const eps::Trajectory& traj,
                           const std::string& format) {
  write_file(path, traj, format);
}

}  // namespace vortexbody
