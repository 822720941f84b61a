#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "polarmax/cli.hpp"
#include "polarmax/closed_forms.hpp"

using namespace polarmax;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "polarmax_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const std::vector<std::string> kOctagon = {"solve", "--kernel", "riesz:2", "--set", "circle", "--n", "8",
                                           "--restarts", "1", "--seed", "3"};

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("solve writes the JSON envelope") {
    const Outcome o = call(kOctagon);
    REQUIRE(o.code == cli::kOk);
    const auto doc = nlohmann::json::parse(o.out);
    CHECK(doc["tool"] == "polarmax");
    CHECK(doc["config_hash"].get<std::string>().size() == 16);
    CHECK(doc["config"]["n"] == 8);
    CHECK(doc["config"]["kernel"] == "riesz:2");
    CHECK_FALSE(doc["config"].contains("threads"));
    CHECK(doc["result"]["value"].get<double>() == doctest::Approx(circle_optimal_value(8, 2.0)).epsilon(1e-4));
    CHECK(doc["result"]["canonical_angles"].size() == 8);
    CHECK(doc["result"]["success"] == true);
  }

  TEST_CASE("output is byte-identical across runs and thread counts") {
    auto a = kOctagon, b = kOctagon;
    a.insert(a.end(), {"--threads", "1"});
    b.insert(b.end(), {"--threads", "3"});
    const Outcome x = call(a), y = call(b), z = call(a);
    CHECK(x.out == y.out);
    CHECK(x.out == z.out);
  }

  TEST_CASE("invalid input exits with a one-line message") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"solve", "--kernel", "riesz:abc", "--n", "4"},
             {"solve", "--kernel", "riesz:2", "--set", "torus", "--n", "4"},
             {"solve", "--n", "0"},
             {"solve", "--n", "4", "--mode", "sideways"},
             {"solve"},
             {"frobnicate"},
             {"chebyshev", "--kernel", "innerpower:3"}}) {
      const Outcome o = call(args);
      CAPTURE(args[0]);
      CHECK(o.code == cli::kValidationError);
      CHECK(o.out.empty());
      CHECK_FALSE(o.err.empty());
      CHECK(std::count(o.err.begin(), o.err.end(), '\n') == 1);
    }
  }

  TEST_CASE("config file overrides and rejects unknown fields") {
    const fs::path good = scratch("good.json"), bad = scratch("bad.json");
    write_file(good, R"({"n": 4, "kernel": "riesz:1", "restarts": 1})");
    write_file(bad, R"({"n": 4, "colour": "blue"})");
    const Outcome o = call({"solve", "--n", "9", "--config", good.string()});
    REQUIRE(o.code == cli::kOk);
    const auto doc = nlohmann::json::parse(o.out);
    CHECK(doc["config"]["n"] == 4);
    CHECK(doc["config"]["kernel"] == "riesz:1");
    const Outcome e = call({"solve", "--n", "4", "--config", bad.string()});
    CHECK(e.code == cli::kValidationError);
    CHECK(e.err.find("colour") != std::string::npos);
    CHECK(call({"solve", "--n", "4", "--config", scratch("missing.json").string()}).code == cli::kValidationError);
  }

  TEST_CASE("thresholds table") {
    const Outcome o = call({"thresholds", "--s", "2", "--n-range", "8:10"});
    REQUIRE(o.code == cli::kOk);
    std::istringstream in(o.out);
    std::string line;
    std::vector<std::string> rows;
    while (std::getline(in, line))
      if (!line.empty() && line[0] != '#') rows.push_back(line);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == "N,r_bar,R_inv,R");
    const double r_bar = std::stod(rows[1].substr(rows[1].find(',') + 1));
    CHECK(r_bar == doctest::Approx(circle_optimal_radius(8, 2.0)).epsilon(1e-12));
    CHECK(o.out.rfind("# polarmax ", 0) == 0);
  }

  TEST_CASE("census reads a saved solution") {
    const fs::path saved = scratch("octagon.json");
    auto args = kOctagon;
    args.insert(args.end(), {"--out", saved.string()});
    REQUIRE(call(args).code == cli::kOk);
    const Outcome o = call({"verify", "census", "--from", saved.string(), "--eps", "0.2"});
    REQUIRE(o.code == cli::kOk);
    const auto doc = nlohmann::json::parse(o.out);
    CHECK(doc["result"]["census"] == 0);
    CHECK(doc["result"]["n"] == 8);
    // Nothing is within 1e-6 of the circle: r_bar < 1.
    const auto tight = nlohmann::json::parse(call({"verify", "census", "--from", saved.string(), "--eps", "1e-6"}).out);
    CHECK(tight["result"]["census"] == 8);
  }

  TEST_CASE("replacement verification") {
    const Outcome o = call({"verify", "replacement", "--set", "cube:2", "--res", "100", "--x", "2,2"});
    REQUIRE(o.code == cli::kOk);
    const auto doc = nlohmann::json::parse(o.out);
    CHECK(doc["result"]["dominance_violations"] == 0);
    CHECK(doc["result"]["n"].get<int>() <= 12);
  }

  TEST_CASE("version and help") {
    const Outcome v = call({"--version"});
    CHECK(v.code == cli::kOk);
    CHECK(v.out.find('.') != std::string::npos);
    const Outcome h = call({"--help"});
    CHECK(h.code == cli::kOk);
    CHECK(h.out.find("solve") != std::string::npos);
  }

  TEST_CASE("sets given as shape descriptors, and the potential profile") {
    const fs::path cfg = scratch("shape.json"), prof = scratch("profile.csv");
    write_file(cfg, R"({"set": {"shape": "sphere", "p": 3, "radius": 1.0, "center": [0, 0, 0]}, "n": 2})");
    const Outcome o = call({"solve", "--config", cfg.string(), "--restarts", "1", "--profile-csv", prof.string()});
    REQUIRE(o.code == cli::kOk);
    const auto doc = nlohmann::json::parse(o.out);
    CHECK(doc["config"]["set"] == "sphere:3:1");
    CHECK(doc["result"]["value"].get<double>() == doctest::Approx(2.0).epsilon(1e-6));
    const std::string csv = read_file(prof);
    CHECK(csv.find("y0,y1,y2,potential\n") != std::string::npos);
    // Points at the center give the constant profile 2 everywhere on the sphere.
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3 + doc["config"]["resolution"].get<int>());
  }

  TEST_CASE("octagon scenario reports its witness ring") {
    const Outcome o = call({"solve", "--kernel", "riesz:2.2", "--set", "circle", "--n", "8", "--restarts", "1"});
    REQUIRE(o.code == cli::kOk);
    const auto doc = nlohmann::json::parse(o.out);
    const auto& res = doc["result"];
    CHECK(res["configuration"].size() == 8);
    // The minimum is attained at the eight arc midpoints.
    CHECK(res["witness_ring"].size() == 8);
    const auto angles = res["canonical_angles"].get<std::vector<double>>();
    for (std::size_t i = 1; i < angles.size(); ++i)
      CHECK(angles[i] - angles[i - 1] == doctest::Approx(std::numbers::pi / 4).epsilon(1e-3));
  }
}
