#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vortexbody/cli.hpp"
#include "vortexbody/config.hpp"

using namespace vortexbody;
namespace fs = std::filesystem;

namespace {

const char* kGoodConfig = R"({
  "shape": "disk",
  "m": 1.0, "J0": 1.0, "gamma": 6.283185307179586,
  "ell0": [1.0, 0.0], "r0": 0.0, "h0": [0.0, 0.0],
  "blobs": [],
  "dt": 1e-3, "T": 0.5,
  "output_stride": 100,
  "output": {"path": "OUT", "format": "jsonl"},
  "seed": 7
})";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "vortexbody_test";
  fs::create_directories(dir);
  return dir;
}

std::string with_output(const std::string& text, const fs::path& out) {
  std::string s = text;
  const auto pos = s.find("OUT");
  s.replace(pos, 3, out.string());
  return s;
}

int cli(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"vortexbody"};
  argv.insert(argv.end(), args);
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("config parse, validation and round trip") {
  const ScenarioConfig c = parse_config(kGoodConfig);
  CHECK(c.shape == "disk");
  CHECK(c.gamma == doctest::Approx(kTwoPi));
  CHECK(c.T == 0.5);
  CHECK_FALSE(c.epsilon.has_value());

  // Round trip through the serializer is the identity on the fields.
  const ScenarioConfig c2 = parse_config(serialize_config(c));
  CHECK(c2.shape == c.shape);
  CHECK(c2.m == c.m);
  CHECK(c2.gamma == c.gamma);
  CHECK(c2.dt == c.dt);
  CHECK(c2.T == c.T);
  CHECK(c2.ell0 == c.ell0);
  CHECK(c2.output_path == c.output_path);
  CHECK(c2.seed == c.seed);
  CHECK(c2.blobs.size() == c.blobs.size());

  SUBCASE("missing dt is named in the error") {
    try {
      parse_config(R"({"shape": "disk", "T": 1.0})");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("dt") != std::string::npos);
    }
  }
  SUBCASE("blob inside the body is rejected") {
    try {
      parse_config(R"({"shape": "disk", "epsilon": 0.5, "dt": 1e-3, "T": 1.0,
                       "blobs": [{"position": [0.1, 0.0], "strength": 1.0}]})");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("blobs[0]") != std::string::npos);
    }
  }
  SUBCASE("bad joukowski parameter") {
    CHECK_THROWS_AS(parse_config(R"({"shape": "joukowski", "a": 1.2, "dt": 1e-3, "T": 1.0})"),
                    ConfigError);
  }
  SUBCASE("dt >= T") {
    CHECK_THROWS_AS(parse_config(R"({"shape": "disk", "dt": 1.0, "T": 0.5})"), ConfigError);
  }
}

TEST_CASE("simulate command writes a deterministic trajectory") {
  const fs::path dir = temp_dir();
  const fs::path out1 = dir / "run1.jsonl";
  const fs::path out2 = dir / "run2.jsonl";
  const fs::path cfg1 = dir / "cfg1.json";
  const fs::path cfg2 = dir / "cfg2.json";
  std::ofstream(cfg1) << with_output(kGoodConfig, out1);
  std::ofstream(cfg2) << with_output(kGoodConfig, out2);

  CHECK(cli({"simulate", "--config", cfg1.string().c_str()}) == 0);
  CHECK(cli({"--threads", "2", "simulate", "--config", cfg2.string().c_str()}) == 0);
  REQUIRE(fs::exists(out1));
  const std::string a = slurp(out1), b = slurp(out2);
  CHECK(a == b);  // identical config + seed -> byte-identical, any thread count
  CHECK(a.find("\"h\":[") != std::string::npos);

  // The massive vortex with gamma = 2 pi runs the closed-form circle of
  // radius 1/(2 pi) about (0, 1/(2 pi)); at T = 0.5 it sits at the top.
  std::istringstream lines(a);
  std::string line, last;
  while (std::getline(lines, line)) {
    if (!line.empty()) last = line;
  }
  REQUIRE(last.find("\"t\":0.5") != std::string::npos);
  const auto hpos = last.find("\"h\":[");
  REQUIRE(hpos != std::string::npos);
  double hx = 0.0, hy = 0.0;
  REQUIRE(std::sscanf(last.c_str() + hpos + 5, "%lf,%lf", &hx, &hy) == 2);
  CHECK((Vec2(hx, hy) - Vec2(0.0, 1.0 / kPi)).norm() < 1e-6);
}

TEST_CASE("simulate maps failures to exit codes") {
  const fs::path dir = temp_dir();
  SUBCASE("malformed config: exit 2") {
    const fs::path cfg = dir / "bad.json";
    std::ofstream(cfg) << R"({"shape": "disk", "T": 1.0})";  // dt missing
    CHECK(cli({"simulate", "--config", cfg.string().c_str()}) == 2);
  }
  SUBCASE("missing file: exit 2") {
    CHECK(cli({"simulate", "--config", (dir / "nope.json").string().c_str()}) == 2);
  }
  SUBCASE("collision halt: exit 3") {
    // A blob starting inside its own guard distance of the point mass.
    const fs::path cfg = dir / "collide.json";
    const fs::path out = dir / "collide.jsonl";
    std::ofstream(cfg) << R"({"shape": "disk", "gamma": 1.0, "dt": 1e-3, "T": 1.0,
      "ell0": [0, 0],
      "blobs": [{"position": [0.05, 0.0], "strength": 1.0, "core": 0.1}],
      "output": {"path": ")" << out.string() << R"(", "format": "jsonl"}})";
    CHECK(cli({"simulate", "--config", cfg.string().c_str()}) == 3);
  }
}

TEST_CASE("verify command") {
  CHECK(cli({"verify", "--shape", "disk"}) == 0);
  // An unreachable tolerance must produce reported failures, exit 1.
  CHECK(cli({"verify", "--shape", "disk", "--tol", "1e-15"}) == 1);
}

TEST_CASE("forces command") {
  const fs::path dir = temp_dir();
  const fs::path cfg = dir / "forces.json";
  std::ofstream(cfg) << R"({"shape": "disk", "epsilon": 0.25, "gamma": 2.0,
    "ell0": [0.6, 0.3], "dt": 1e-3, "T": 1.0, "blobs": []})";
  CHECK(cli({"forces", "--config", cfg.string().c_str()}) == 0);

  // epsilon is required.
  const fs::path cfg2 = dir / "forces2.json";
  std::ofstream(cfg2) << R"({"shape": "disk", "gamma": 2.0, "dt": 1e-3, "T": 1.0})";
  CHECK(cli({"forces", "--config", cfg2.string().c_str()}) == 2);
}

TEST_CASE("convergence command") {
  const fs::path dir = temp_dir();
  const fs::path cfg = dir / "conv.json";
  const fs::path out = dir / "conv.json.out";
  std::ofstream(cfg) << R"({"shape": "disk", "epsilon_list": [0.2, 0.1], "gamma": 0.0,
    "ell0": [1.0, 0.0], "dt": 2e-3, "T": 0.05, "output_stride": 5,
    "output": {"path": ")" << out.string() << R"(", "format": "jsonl"},
    "blobs": []})";
  CHECK(cli({"convergence", "--config", cfg.string().c_str()}) == 0);
  REQUIRE(fs::exists(out));
  const std::string report = slurp(out);
  CHECK(report.find("sup_error") != std::string::npos);

  // Non-disk shapes are rejected.
  const fs::path cfg2 = dir / "conv2.json";
  std::ofstream(cfg2) << R"({"shape": "joukowski", "a": 0.5, "epsilon_list": [0.2],
    "dt": 2e-3, "T": 0.05, "blobs": []})";
  CHECK(cli({"convergence", "--config", cfg2.string().c_str()}) == 2);
}

TEST_CASE("shipped sample configs stay valid") {
#ifdef VORTEXBODY_CONFIG_DIR
  const fs::path dir = VORTEXBODY_CONFIG_DIR;
  int seen = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".json") continue;
    INFO(entry.path().string());
    CHECK_NOTHROW(load_config(entry.path().string()));
    ++seen;
  }
  CHECK(seen >= 5);
#endif
}

TEST_CASE("csv output format") {
  const fs::path dir = temp_dir();
  const fs::path out = dir / "run.csv";
  const fs::path cfg = dir / "csv.json";
  std::string text = with_output(kGoodConfig, out);
  const auto pos = text.find("jsonl");
  text.replace(pos, 5, "csv");
  std::ofstream(cfg) << text;
  CHECK(cli({"simulate", "--config", cfg.string().c_str()}) == 0);
  const std::string body = slurp(out);
  CHECK(body.rfind("t,h_x,h_y,xi_x,xi_y,H,", 0) == 0);

  // Finite-size CSV carries the force-breakdown columns.
  const fs::path out2 = dir / "run2.csv";
  const fs::path cfg2 = dir / "csv2.json";
  std::ofstream(cfg2) << R"({"shape": "disk", "epsilon": 0.2, "gamma": 1.0,
    "ell0": [0.3, 0.0], "dt": 1e-3, "T": 0.01, "output_stride": 5,
    "blobs": [{"position": [1.0, 0.0], "strength": 0.5}],
    "output": {"path": ")" << out2.string() << R"(", "format": "csv"}})";
  CHECK(cli({"simulate", "--config", cfg2.string().c_str()}) == 0);
  const std::string body2 = slurp(out2);
  CHECK(body2.find("Cb_1") != std::string::npos);
  CHECK(body2.find("blasius_defect") != std::string::npos);
}
