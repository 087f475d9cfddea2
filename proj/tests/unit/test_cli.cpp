#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "bargmann/cli.hpp"

using namespace bargmann;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("bargmann_cli_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "bargmann");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string scenario_dir() { return BARGMANN_SCENARIO_DIR; }

const char* kThreeStep = R"({
  "name": "three",
  "potential": {"family": "free"},
  "initial": {"r0": [0, 0, 0], "v0": [1, 0, 0]},
  "dt_step": 0.1,
  "t_end": 0.3,
  "checks": ["vertical", "constraint", "charges"]
})";

}  // namespace

TEST_CASE("three free steps give four csv rows") {
  const fs::path dir = fresh_dir("three");
  spit(dir / "three.json", kThreeStep);
  CHECK(cli({"simulate", "--config", (dir / "three.json").string(), "--output", dir.string()}) == kExitPass);
  const auto rows = lines(slurp(dir / "three.trajectory.csv"));
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "t,x,y,z,s,dx,dy,dz,ds,h0");
  CHECK(rows[1] == "0,0,0,0,0,1,0,0,-0.5,0");
  CHECK(rows[4].rfind("0.30000000000000004,0.30000000000000004,0,0,-0.15000000000000002,1,0,0,-0.5,0", 0) == 0);
  CHECK(fs::exists(dir / "three.report.json"));
}

TEST_CASE("json trajectory format") {
  const fs::path dir = fresh_dir("json");
  spit(dir / "three.json", kThreeStep);
  CHECK(cli({"simulate", "--config", (dir / "three.json").string(), "--output", dir.string(), "--format",
             "json"}) == kExitPass);
  const auto j = nlohmann::json::parse(slurp(dir / "three.trajectory.json"));
  CHECK(j["columns"].size() == 10);
  CHECK(j["rows"].size() == 4);
  CHECK(j["rows"][3][1] == doctest::Approx(0.3));
}

TEST_CASE("command-line overrides") {
  const fs::path dir = fresh_dir("override");
  spit(dir / "three.json", kThreeStep);
  CHECK(cli({"simulate", "--config", (dir / "three.json").string(), "--output", dir.string(), "--dt", "0.05",
             "--t-end", "0.5"}) == kExitPass);
  CHECK(lines(slurp(dir / "three.trajectory.csv")).size() == 12);
  CHECK(cli({"simulate", "--config", (dir / "three.json").string(), "--output", dir.string(), "--dt", "0"}) ==
        kExitConfigError);
}

TEST_CASE("report json schema and round trip") {
  const fs::path dir = fresh_dir("report");
  spit(dir / "three.json", kThreeStep);
  CHECK(cli({"simulate", "--config", (dir / "three.json").string(), "--output", dir.string()}) == kExitPass);
  const auto j = nlohmann::ordered_json::parse(slurp(dir / "three.report.json"));
  std::vector<std::string> keys;
  for (const auto& item : j.items()) keys.push_back(item.key());
  CHECK(keys == std::vector<std::string>{"scenario", "checks", "versions", "seed"});
  REQUIRE(j["checks"].size() == 3);
  CHECK(j["checks"][0]["name"] == "vertical");
  CHECK(j["checks"][0]["status"] == "pass");
  CHECK(!j["checks"][0].contains("runtime"));
  CHECK(j["versions"].contains("bargmann"));
  CHECK(j["seed"] == 20240601);

  const Report r = report_from_json(j);
  CHECK(report_to_json(r) == j);

  Report with_nan = r;
  with_nan.checks[1].value = std::numeric_limits<double>::quiet_NaN();
  with_nan.checks[1].passed = false;
  const auto jn = report_to_json(with_nan);
  CHECK(jn["checks"][1]["value"].is_null());
  CHECK(jn["checks"][1]["status"] == "fail");
  CHECK(report_from_json(jn) == with_nan);
  CHECK(!with_nan.passed());
}

TEST_CASE("timings are opt-in") {
  const fs::path dir = fresh_dir("timings");
  spit(dir / "three.json", kThreeStep);
  CHECK(cli({"simulate", "--config", (dir / "three.json").string(), "--output", dir.string(), "--timings"}) ==
        kExitPass);
  const auto j = nlohmann::json::parse(slurp(dir / "three.report.json"));
  CHECK(j["checks"][0].contains("runtime"));
}

TEST_CASE("vertical charge series is the mass at every sample") {
  const fs::path dir = fresh_dir("xi");
  CHECK(cli({"simulate", "--config", scenario_dir() + "/harmonic.json", "--output", dir.string(),
             "--plot-data", "--t-end", "1.0"}) == kExitPass);
  const auto rows = lines(slurp(dir / "harmonic.charge.xi.csv"));
  REQUIRE(rows.size() == 1002);
  CHECK(rows[0] == "t,xi");
  for (std::size_t k = 1; k < rows.size(); ++k) {
    CHECK(rows[k].substr(rows[k].find(',') + 1) == "2");
  }
  CHECK(fs::exists(dir / "harmonic.charge.time_translation.csv"));
}

TEST_CASE("identical runs write identical bytes") {
  const fs::path a = fresh_dir("det_a");
  const fs::path b = fresh_dir("det_b");
  for (const fs::path& dir : {a, b}) {
    CHECK(cli({"check-all", "--config", scenario_dir() + "/kepler.json", "--output", dir.string(), "--plot-data",
               "--t-end", "2.0"}) == kExitPass);
  }
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    ++files;
    CAPTURE(entry.path().filename().string());
    CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));
  }
  CHECK(files >= 3);
}

TEST_CASE("parallel scenario batch matches one-at-a-time runs") {
  const int saved = omp_get_max_threads();
  omp_set_num_threads(4);
  const fs::path batch = fresh_dir("batch");
  const fs::path single = fresh_dir("single");
  std::vector<std::string> args = {"check-all"};
  for (const char* sc : {"free", "harmonic", "uniform", "kepler"}) {
    args.push_back("--config");
    args.push_back(scenario_dir() + "/" + sc + ".json");
  }
  args.insert(args.end(), {"--output", batch.string(), "--t-end", "1.5", "--plot-data"});
  CHECK(cli(args) == kExitPass);
  omp_set_num_threads(1);
  for (const char* sc : {"free", "harmonic", "uniform", "kepler"}) {
    CHECK(cli({"check-all", "--config", scenario_dir() + "/" + sc + ".json", "--output", single.string(),
               "--t-end", "1.5", "--plot-data"}) == kExitPass);
  }
  omp_set_num_threads(saved);
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(single)) {
    ++files;
    CAPTURE(entry.path().filename().string());
    CHECK(slurp(entry.path()) == slurp(batch / entry.path().filename()));
  }
  CHECK(files > 8);
}

TEST_CASE("kepler collision without softening fails the constraint check") {
  const fs::path dir = fresh_dir("collision");
  CHECK(cli({"simulate", "--config", scenario_dir() + "/kepler_collision.json", "--output", dir.string()}) ==
        kExitCheckFailure);
  const Report r = report_from_json(nlohmann::ordered_json::parse(slurp(dir / "kepler_collision.report.json")));
  const CheckResult* c = r.find("constraint");
  REQUIRE(c != nullptr);
  CHECK(!c->passed);
  CHECK(!(c->value < c->tolerance));
}

TEST_CASE("usage and configuration errors exit with code 2") {
  const fs::path dir = fresh_dir("errors");
  CHECK(cli({"simulate", "--config", scenario_dir() + "/free.json", "--bogus"}) == kExitConfigError);
  CHECK(cli({"simulate"}) == kExitConfigError);
  CHECK(cli({"frobnicate", "--config", scenario_dir() + "/free.json"}) == kExitConfigError);
  CHECK(cli({"simulate", "--config", (dir / "missing.json").string()}) == kExitConfigError);
  CHECK(cli({"simulate", "--config", scenario_dir() + "/free.json", "--format", "xml"}) == kExitConfigError);

  spit(dir / "broken.json", "{ \"name\": ");
  CHECK(cli({"simulate", "--config", (dir / "broken.json").string(), "--output", dir.string()}) ==
        kExitConfigError);
  CHECK(cli({"check-quantum", "--config", scenario_dir() + "/kepler.json", "--output", dir.string()}) ==
        kExitConfigError);
  CHECK(cli({"simulate", "--config", scenario_dir() + "/free.json", "--config", scenario_dir() + "/free.json",
             "--output", dir.string()}) == kExitConfigError);
}

TEST_CASE("subcommands select their checks") {
  const Scenario sc = load_scenario(scenario_dir() + "/harmonic.json");
  const ScenarioRun sym = run_scenario(sc, Command::kCheckSymmetries);
  REQUIRE(sym.report.checks.size() == 1);
  CHECK(sym.report.checks[0].name == "symmetries");
  CHECK(!sym.trajectory);

  const ScenarioRun qm = run_scenario(sc, Command::kCheckQuantum);
  REQUIRE(qm.report.checks.size() == 1);
  CHECK(qm.report.checks[0].name == "quantum");
  CHECK(qm.report.checks[0].passed);

  Scenario short_run = sc;
  short_run.t_end = 0.5;
  const ScenarioRun sim = run_scenario(short_run, Command::kSimulate);
  CHECK(sim.report.checks.size() == 4);
  CHECK(sim.trajectory.has_value());
  CHECK(sim.report.passed());
}

TEST_CASE("charge csv refuses mismatched series") {
  const Scenario sc = load_scenario(scenario_dir() + "/free.json");
  Scenario short_run = sc;
  short_run.t_end = 0.01;
  const ScenarioRun run = run_scenario(short_run, Command::kSimulate);
  REQUIRE(run.trajectory);
  CHECK_THROWS_AS((void)charge_csv(*run.trajectory, ChargeSeries{"x", {1.0}}), GridError);
}
