#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "doctest.h"
#include "lrp/cli/commands.hpp"
#include "lrp/cli/config.hpp"
#include "lrp/cli/records.hpp"
#include "lrp/errors.hpp"
#include "lrp/graph_io.hpp"

using namespace lrp;
using namespace lrp::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("lrp_cli_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// CSV contents with the timing column dropped.
std::vector<std::vector<std::string>> records(const fs::path& p) {
  const CsvTable t = read_csv(p);
  const auto it = std::find(t.header().begin(), t.header().end(), "wall_ms");
  std::vector<std::vector<std::string>> out;
  for (auto row : t.rows()) {
    if (it != t.header().end()) row.erase(row.begin() + (it - t.header().begin()));
    out.push_back(row);
  }
  return out;
}

int tool(const std::string& args) {
  const std::string cmd = std::string(LRP_TOOL_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("config json round trip") {
  ExperimentConfig c;
  c.command = "two-ball";
  c.d = 2;
  c.n = 40;
  c.exponent = 2.5;
  c.x = {1, 2};
  c.delta_grid = {0.2};
  c.stop_alpha = 0.55;
  const auto j = config_to_json(c);
  const auto back = config_from_json(j);
  CHECK(config_to_json(back) == j);
  CHECK(config_hash(back) == config_hash(c));

  auto bad = j;
  bad["no_such_key"] = 1;
  CHECK_THROWS_AS(config_from_json(bad), std::invalid_argument);
}

TEST_CASE("config hash ignores threads and output path") {
  ExperimentConfig a;
  a.command = "diameter";
  ExperimentConfig b = a;
  b.threads = 8;
  b.out = "elsewhere.csv";
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a).size() == 16);
  b.seed = 2;
  CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("config validation") {
  ExperimentConfig c;
  c.command = "diameter";
  CHECK_NOTHROW(validate(c));
  auto bad = c;
  bad.beta = -1;
  CHECK_THROWS_AS(validate(bad), DomainError);
  bad = c;
  bad.eps = 0.5;
  CHECK_THROWS_AS(validate(bad), DomainError);
  bad = c;
  bad.mode = "sideways";
  CHECK_THROWS_AS(validate(bad), DomainError);
  bad = c;
  bad.start = {1, 2};
  CHECK_THROWS_AS(validate(bad), DomainError);
}

TEST_CASE("csv table write and read") {
  const fs::path dir = scratch("csv");
  CsvTable t({"a", "b"});
  t.add_row({"1", "x"});
  t.add_row({"2", ""});
  CHECK_THROWS(t.add_row({"3"}));
  t.write(dir / "sub" / "t.csv");
  const CsvTable back = read_csv(dir / "sub" / "t.csv");
  CHECK(back.header() == t.header());
  CHECK(back.rows() == t.rows());
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("commands are reproducible across thread counts") {
  const fs::path dir = scratch("repro");
  const std::vector<std::string> commands = {"ball-growth", "diameter", "two-ball", "scaling", "verify-lemmas"};
  for (const auto& name : commands) {
    ExperimentConfig c;
    c.command = name;
    c.n = 64;
    c.trials = 6;
    c.n_grid = {16, 32};
    c.chernoff_trials = 1000;
    c.calibration_n = 16;
    c.weight_sites = 3;
    c.calibration_trials = 20;
    c.mode = name == "two-ball" ? "quenched" : "annealed";
    const std::string ext = name == "verify-lemmas" ? ".json" : ".csv";
    c.threads = 1;
    c.out = (dir / (name + "_1" + ext)).string();
    const auto one = run_command(c);
    c.threads = 4;
    c.out = (dir / (name + "_4" + ext)).string();
    const auto four = run_command(c);
    CAPTURE(name);
    CHECK(one.exit_code == four.exit_code);
    auto strip = [](nlohmann::json j) {
      j.erase("per_n_table");
      return j;
    };
    CHECK(strip(one.summary) == strip(four.summary));
    if (ext == ".csv") {
      CHECK(records(dir / (name + "_1" + ext)) == records(dir / (name + "_4" + ext)));
    } else {
      CHECK(slurp(dir / (name + "_1" + ext)) == slurp(dir / (name + "_4" + ext)));
    }
  }
}

TEST_CASE("generate writes a loadable graph deterministically") {
  const fs::path dir = scratch("generate");
  ExperimentConfig c;
  c.command = "generate";
  c.d = 2;
  c.n = 20;
  c.out = (dir / "a.lrpg").string();
  const auto a = run_command(c);
  c.out = (dir / "b.lrpg").string();
  run_command(c);
  CHECK(slurp(dir / "a.lrpg") == slurp(dir / "b.lrpg"));
  const Graph g = load_graph(dir / "a.lrpg");
  CHECK(g.box() == BoxSpec(2, 20));
  CHECK(a.summary["edge_count"] == g.edge_count());
  CHECK(fs::exists(dir / "a.summary.json"));
}

TEST_CASE("executable exit codes") {
  const fs::path dir = scratch("exit");
  const std::string out = " --out " + (dir / "o.csv").string();
  CHECK(tool("generate --n 16 --out " + (dir / "g.lrpg").string()) == 0);
  CHECK(tool("diameter --n 0" + out) == 2);
  CHECK(tool("diameter --beta -1" + out) == 2);
  CHECK(tool("frobnicate") == 2);
  CHECK(tool("diameter --mode sideways" + out) == 2);
  CHECK(tool("diameter --d 2 --n 1100" + out) == 3);
  CHECK(tool("scaling --n-grid 8 16" + out) == 2);

  std::ofstream(dir / "bad.json") << R"({"unknown_field": 3})";
  CHECK(tool("diameter --config " + (dir / "bad.json").string()) == 2);
  std::ofstream(dir / "good.json") << R"({"n": 16, "trials": 2})";
  CHECK(tool("diameter --config " + (dir / "good.json").string() + out) == 0);
  const CsvTable t = read_csv(dir / "o.csv");
  CHECK(t.rows().size() == 2);
  CHECK(t.rows()[0][6] == "16");
}
