#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "oracles.hpp"
#include "stepreach/cli.hpp"

using namespace stepreach;
using nlohmann::json;

namespace {

const std::string kData = STEPREACH_TEST_DATA;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "stepreach");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string model() { return kData + "/nav_example.model.json"; }
std::string config(const std::string& c) { return kData + "/nav_example." + c + ".json"; }

}  // namespace

TEST_CASE("exit codes") {
  CHECK(cli({"verify", model(), config("feasible")}).code == 0);
  CHECK(cli({"verify", model(), config("unsafe")}).code == 1);
  CHECK(cli({"verify", model(), kData + "/missing.json"}).code == 2);
  CHECK(cli({"verify", model()}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"verify", model(), config("feasible"), "--bound", "-3"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("golden report") {
  const Run r = cli({"verify", model(), config("feasible")});
  REQUIRE(r.code == 0);
  CHECK(r.out.find('\n') == r.out.size() - 1);
  json doc = json::parse(r.out);
  REQUIRE(doc.contains("time"));
  doc.erase("time");
  const json golden = json::parse(R"GOLDEN({"engine": "sat", "hit": null, "schema": 1, "stats": {"cache_hits": 20, "discarded_step_paths": 0, "flowpipe_cache_hits": 10, "negations": 10, "postc": 10, "postd": 16, "sat_calls": 7, "shallow_paths": 2, "step_paths": 4, "successor_cache_hits": 10, "symbolic_states": 20}, "verdict": "safe", "witness": null})GOLDEN");
  CHECK(doc == golden);
}

TEST_CASE("unsafe report carries a witness") {
  const Run r = cli({"verify", model(), config("unsafe")});
  const json doc = json::parse(r.out);
  CHECK(doc["verdict"] == "unknown");
  CHECK(doc["witness"].size() == 3);
  CHECK(doc["hit"]["location"] == json({"4", "7", "10"}));
}

TEST_CASE("baseline engine and options") {
  const Run r = cli({"verify", model(), config("unsafe"), "--engine", "baseline"});
  CHECK(r.code == 1);
  CHECK(json::parse(r.out)["engine"] == "baseline");
  const Run b = cli({"verify", model(), config("feasible"), "--no-cache", "--directions", "oct", "--workers", "2"});
  CHECK(b.code == 0);
  CHECK(json::parse(b.out)["stats"]["cache_hits"] == 0);
  CHECK(cli({"verify", model(), config("feasible"), "--bound", "4"}).code == 0);
}

TEST_CASE("enumerate prints one line per step path") {
  const Run r = cli({"enumerate", model(), config("feasible")});
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    const json parsed = json::parse(line);
    CHECK(parsed["interleaving_length"] == 5);
    ++n;
  }
  CHECK(n == 4);
}

TEST_CASE("stats and bench generation") {
  const Run s = cli({"stats", model()});
  CHECK(s.code == 0);
  const json doc = json::parse(s.out);
  CHECK(doc.dump().find("216") != std::string::npos);
  const auto dir = std::filesystem::temp_directory_path() / "stepreach_cli_test";
  std::filesystem::remove_all(dir);
  CHECK(cli({"bench", "gen", "rods", "--n", "2", "--variant", "unsafe", "--out", dir.string()}).code == 0);
  CHECK(cli({"verify", (dir / "model.json").string(), (dir / "config.json").string()}).code == 1);
  CHECK(cli({"bench", "gen", "nav", "--objects", "1", "--variant", "safe", "--out", dir.string()}).code == 0);
  CHECK(cli({"verify", (dir / "model.json").string(), (dir / "config.json").string()}).code == 0);
  const auto dumps = dir / "dumps";
  CHECK(cli({"verify", model(), config("feasible"), "--dump-cnf", (dumps / "f").string(), "--dump-tree",
             (dumps / "tree.json").string(), "--dump-flowpipes", (dumps / "fp").string()})
            .code == 0);
  CHECK(std::filesystem::exists(dumps / "f.l5.cnf"));
  CHECK(std::filesystem::exists(dumps / "tree.json"));
  CHECK(std::filesystem::exists(dumps / "fp" / "fp0.csv"));
  std::filesystem::remove_all(dir);
}
