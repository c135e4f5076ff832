#include "vortexbody/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace vortexbody {

using nlohmann::json;

ConformalMap ScenarioConfig::make_map() const {
  if (shape == "disk") return unit_disk_map();
  if (shape == "joukowski") return joukowski_family_map(a);
  throw ConfigError("shape: unknown value '" + shape + "' (expected disk or joukowski)");
}

namespace {

double finite_number(const json& j, const std::string& field) {
  if (!j.contains(field)) throw ConfigError(field + ": missing");
  if (!j.at(field).is_number()) throw ConfigError(field + ": expected a number");
  const double v = j.at(field).get<double>();
  if (!std::isfinite(v)) throw ConfigError(field + ": not finite");
  return v;
}

double finite_number_or(const json& j, const std::string& field, double fallback) {
  if (!j.contains(field)) return fallback;
  return finite_number(j, field);
}

Vec2 vec2_field(const json& j, const std::string& field, const Vec2& fallback) {
  if (!j.contains(field)) return fallback;
  const auto& v = j.at(field);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ConfigError(field + ": expected [x, y]");
  }
  Vec2 out(v[0].get<double>(), v[1].get<double>());
  if (!out.allFinite()) throw ConfigError(field + ": not finite");
  return out;
}

}  // namespace

ScenarioConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }

  ScenarioConfig c;
  if (j.contains("shape")) {
    if (!j.at("shape").is_string()) throw ConfigError("shape: expected a string");
    c.shape = j.at("shape").get<std::string>();
  }
  c.a = finite_number_or(j, "a", 0.0);
  if (c.shape == "joukowski" && !(c.a >= 0.0 && c.a < 1.0)) {
    throw ConfigError("a: joukowski parameter must satisfy 0 <= a < 1");
  }
  if (c.shape != "disk" && c.shape != "joukowski") {
    throw ConfigError("shape: unknown value '" + c.shape + "' (expected disk or joukowski)");
  }

  if (j.contains("epsilon")) {
    const double eps = finite_number(j, "epsilon");
    if (!(eps > 0.0)) throw ConfigError("epsilon: must be positive");
    c.epsilon = eps;
  }
  if (j.contains("epsilon_list")) {
    if (!j.at("epsilon_list").is_array() || j.at("epsilon_list").empty()) {
      throw ConfigError("epsilon_list: expected a non-empty array");
    }
    for (const auto& e : j.at("epsilon_list")) {
      if (!e.is_number() || !(e.get<double>() > 0.0)) {
        throw ConfigError("epsilon_list: entries must be positive numbers");
      }
      c.epsilon_list.push_back(e.get<double>());
    }
  }

  c.m = finite_number_or(j, "m", 1.0);
  if (!(c.m > 0.0)) throw ConfigError("m: must be positive");
  c.J0 = finite_number_or(j, "J0", 1.0);
  if (!(c.J0 > 0.0)) throw ConfigError("J0: must be positive");
  c.gamma = finite_number_or(j, "gamma", 0.0);
  c.ell0 = vec2_field(j, "ell0", Vec2::Zero());
  c.r0 = finite_number_or(j, "r0", 0.0);
  c.h0 = vec2_field(j, "h0", Vec2::Zero());

  if (j.contains("blobs")) {
    if (!j.at("blobs").is_array()) throw ConfigError("blobs: expected an array");
    int idx = 0;
    for (const auto& jb : j.at("blobs")) {
      const std::string where = "blobs[" + std::to_string(idx++) + "]";
      if (!jb.is_object()) throw ConfigError(where + ": expected an object");
      VortexBlob b;
      b.position = vec2_field(jb, "position", Vec2::Zero());
      if (!jb.contains("position")) throw ConfigError(where + ".position: missing");
      b.strength = finite_number(jb, "strength");
      b.core = finite_number_or(jb, "core", 0.0);
      if (b.core < 0.0) throw ConfigError(where + ".core: must be nonnegative");
      c.blobs.push_back(b);
    }
  }

  c.dt = finite_number(j, "dt");
  if (!(c.dt > 0.0)) throw ConfigError("dt: must be positive");
  c.T = finite_number(j, "T");
  if (!(c.T > 0.0)) throw ConfigError("T: must be positive");
  if (!(c.dt < c.T)) throw ConfigError("dt: must be smaller than T");

  c.output_stride = static_cast<int>(finite_number_or(j, "output_stride", 10));
  if (c.output_stride < 1) throw ConfigError("output_stride: must be >= 1");
  c.boundary_nodes = static_cast<int>(finite_number_or(j, "boundary_nodes", 256));
  if (c.boundary_nodes < 16) throw ConfigError("boundary_nodes: must be >= 16");

  if (j.contains("output")) {
    const auto& out = j.at("output");
    if (!out.is_object()) throw ConfigError("output: expected an object");
    if (out.contains("path")) c.output_path = out.at("path").get<std::string>();
    if (out.contains("format")) c.output_format = out.at("format").get<std::string>();
  }
  if (c.output_format != "jsonl" && c.output_format != "csv") {
    throw ConfigError("output.format: expected jsonl or csv");
  }
  if (j.contains("seed")) c.seed = j.at("seed").get<unsigned long>();

  // Blobs must clear the body for every size this scenario can run at.
  double max_eps = c.epsilon.value_or(0.0);
  for (double e : c.epsilon_list) max_eps = std::max(max_eps, e);
  if (max_eps > 0.0) {
    const BodyGeometry geom{c.make_map(), max_eps};
    int idx = 0;
    for (const auto& b : c.blobs) {
      if (geom.mapped_radius(b.position - c.h0) <= 1.0) {
        throw ConfigError("blobs[" + std::to_string(idx) +
                          "].position: inside the body at epsilon=" + std::to_string(max_eps));
      }
      ++idx;
    }
  }
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ScenarioConfig& c) {
  json j;
  j["shape"] = c.shape;
  if (c.shape == "joukowski") j["a"] = c.a;
  if (c.epsilon) j["epsilon"] = *c.epsilon;
  if (!c.epsilon_list.empty()) j["epsilon_list"] = c.epsilon_list;
  j["m"] = c.m;
  j["J0"] = c.J0;
  j["gamma"] = c.gamma;
  j["ell0"] = {c.ell0.x(), c.ell0.y()};
  j["r0"] = c.r0;
  j["h0"] = {c.h0.x(), c.h0.y()};
  j["blobs"] = json::array();
  for (const auto& b : c.blobs) {
    j["blobs"].push_back({{"position", {b.position.x(), b.position.y()}},
                          {"strength", b.strength},
                          {"core", b.core}});
  }
  j["dt"] = c.dt;
  j["T"] = c.T;
  j["output_stride"] = c.output_stride;
  j["boundary_nodes"] = c.boundary_nodes;
  j["output"] = {{"path", c.output_path}, {"format", c.output_format}};
  j["seed"] = c.seed;
  return j.dump(2);
}

}  // namespace vortexbody
