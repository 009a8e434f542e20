#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "stepreach/baseline.hpp"
#include "stepreach/engine.hpp"
#include "stepreach/model.hpp"
#include "stepreach/pathenum.hpp"

namespace stepreach {

inline constexpr int kReportSchema = 1;

struct RunOptions {
  bool use_cache = true;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  bool early_exit = false;
  bool baseline = false;  // explicit-product engine instead of path enumeration
  std::string dump_cnf;
  std::string dump_tree;
  std::string dump_flowpipes;
};

struct Report {
  bool safe = true;
  std::string engine = "sat";
  std::optional<ShallowPath> witness;
  std::vector<std::size_t> hit_location;
  std::optional<std::size_t> hit_segment;
  Vector certificate;
  EnumerationStats enumeration;
  EngineStats reach;
  double total_seconds = 0.0;
};

Report verify(const Network& net, const SafetySpec& spec, const RunOptions& options = {});

// Single-line JSON document.
std::string report_json(const Report& report, const Network& net);

// JSON object for one step path: its steps, shallow form and length.
std::string step_path_json(const StepPath& path, const Network& net);

// Entry point of the command-line tool.  Returns the process exit code:
// 0 safe, 1 unknown, 2 usage or input error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stepreach
