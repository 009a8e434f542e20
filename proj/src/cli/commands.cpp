#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "stepreach/bench.hpp"
#include "stepreach/cli.hpp"
#include "stepreach/errors.hpp"

namespace stepreach {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::pair<int, int> parse_cell(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw ValidationError("cell", "expected i,j but got " + s);
  return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
}

Variant parse_variant(const std::string& s) {
  if (s == "safe") return Variant::safe;
  if (s == "unsafe") return Variant::unsafe;
  throw ValidationError("variant", "expected safe or unsafe");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounded reachability for networks of affine hybrid automata"};
  app.require_subcommand(1);

  // verify
  std::string model_path, config_path;
  std::optional<int> bound;
  double time_step = 0, time_horizon = 0;
  std::string directions;
  RunOptions run;
  bool no_cache = false;
  std::string engine = "sat";
  auto* verify_cmd = app.add_subcommand("verify", "check bounded safety; prints a JSON report");
  verify_cmd->add_option("model", model_path, "model file")->required();
  verify_cmd->add_option("config", config_path, "configuration file")->required();
  verify_cmd->add_option("--bound", bound, "override the jump bound k");
  verify_cmd->add_option("--time-step", time_step, "override the time step");
  verify_cmd->add_option("--time-horizon", time_horizon, "override the local time horizon");
  verify_cmd->add_option("--directions", directions, "template directions: box or oct");
  verify_cmd->add_flag("--no-cache", no_cache, "disable flowpipe and successor memoization");
  verify_cmd->add_option("--dump-cnf", run.dump_cnf, "write each depth's formula to <prefix>.l<depth>.cnf");
  verify_cmd->add_option("--dump-tree", run.dump_tree, "write explored computation trees as JSON");
  verify_cmd->add_option("--dump-flowpipes", run.dump_flowpipes, "directory for flowpipe CSV dumps");
  verify_cmd->add_option("--seed", run.seed, "solver seed");
  verify_cmd->add_option("--workers", run.workers, "flowpipe worker threads");
  verify_cmd->add_flag("--early-exit", run.early_exit, "stop at the first depth whose paths are all too long");
  verify_cmd->add_option("--engine", engine, "")->group("");

  // enumerate
  auto* enumerate_cmd = app.add_subcommand("enumerate", "print step paths within the bound as JSON lines");
  enumerate_cmd->add_option("model", model_path, "model file")->required();
  enumerate_cmd->add_option("config", config_path, "configuration file")->required();
  enumerate_cmd->add_option("--bound", bound, "override the jump bound k");
  enumerate_cmd->add_option("--seed", run.seed, "solver seed");
  enumerate_cmd->add_option("--dump-cnf", run.dump_cnf, "write each depth's formula to <prefix>.l<depth>.cnf");

  // stats
  auto* stats = app.add_subcommand("stats", "size of the explicit product");
  stats->add_option("model", model_path, "model file")->required();

  // bench gen nav|rods
  auto* bench = app.add_subcommand("bench", "benchmark generators");
  bench->require_subcommand(1);
  auto* gen = bench->add_subcommand("gen", "generate a model and configuration");
  gen->require_subcommand(1);
  NavSpec nav;
  int grid = 0;
  std::string nav_variant = "unsafe", init_cell, unsafe_cell, out_dir;
  auto* gen_nav_cmd = gen->add_subcommand("nav", "objects navigating a grid");
  gen_nav_cmd->add_option("--grid", grid, "square grid size");
  gen_nav_cmd->add_option("--width", nav.width, "grid width");
  gen_nav_cmd->add_option("--height", nav.height, "grid height");
  gen_nav_cmd->add_option("--objects", nav.objects, "number of objects");
  gen_nav_cmd->add_option("--variant", nav_variant, "safe or unsafe");
  gen_nav_cmd->add_option("--init", init_cell, "initial cell i,j");
  gen_nav_cmd->add_option("--unsafe", unsafe_cell, "unsafe cell i,j");
  gen_nav_cmd->add_flag("--sync", nav.sync, "entering the unsafe cell is a shared label");
  gen_nav_cmd->add_option("--bound", nav.bound, "jump bound");
  gen_nav_cmd->add_option("--out", out_dir, "output directory")->required();
  RodSpec rods;
  std::string rod_variant = "safe";
  auto* gen_rods_cmd = gen->add_subcommand("rods", "rod insertion scheduler");
  gen_rods_cmd->add_option("--n", rods.rods, "number of rods");
  gen_rods_cmd->add_option("--variant", rod_variant, "safe or unsafe");
  gen_rods_cmd->add_option("--bound", rods.bound, "jump bound");
  gen_rods_cmd->add_option("--out", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*stats) {
      const Network net = parse_model(read_file(model_path));
      const ProductStats ps = product_stats(net);
      nlohmann::json doc = {{"components", net.size()},
                            {"dimension", net.total_dimension()},
                            {"shared_labels", net.shared_labels()},
                            {"locations", ps.locations},
                            {"transitions", ps.transitions}};
      out << doc.dump() << '\n';
      return 0;
    }
    if (*bench) {
      GeneratedBenchmark g;
      if (*gen_nav_cmd) {
        if (grid > 0) nav.width = nav.height = grid;
        nav.variant = parse_variant(nav_variant);
        if (!init_cell.empty()) nav.init_cell = parse_cell(init_cell);
        if (!unsafe_cell.empty()) nav.unsafe_cell = parse_cell(unsafe_cell);
        g = gen_nav(nav);
      } else {
        rods.variant = parse_variant(rod_variant);
        g = gen_rods(rods);
      }
      std::filesystem::create_directories(out_dir);
      const auto model_file = std::filesystem::path(out_dir) / "model.json";
      const auto config_file = std::filesystem::path(out_dir) / "config.json";
      write_file(model_file, g.model);
      write_file(config_file, g.config);
      out << nlohmann::json{{"model", model_file.string()}, {"config", config_file.string()}}.dump() << '\n';
      return 0;
    }

    const Network net = parse_model(read_file(model_path));
    SafetySpec spec = parse_config(read_file(config_path), net);
    if (bound) spec.bound = *bound;
    if (time_step > 0) spec.time_step = time_step;
    if (time_horizon > 0) spec.time_horizon = time_horizon;
    if (!directions.empty()) {
      if (directions != "box" && directions != "oct") throw ValidationError("--directions", "expected box or oct");
      spec.directions = direction_family_from_string(directions);
    }
    validate_config(spec, net);

    if (*enumerate_cmd) {
      EnumerationOptions en;
      en.seed = run.seed;
      en.dump_cnf_prefix = run.dump_cnf;
      en.on_step_path = [&](const StepPath& p, const ShallowPath&) { out << step_path_json(p, net) << '\n'; };
      const auto res = enumerate(net, spec, [](const ShallowPath& p) { return FeasibilityVerdict{false, InfeasiblePrefix::whole(p)}; }, en);
      err << "step paths: " << res.stats.step_paths << ", shallow paths: " << res.stats.shallow_paths
          << ", discarded: " << res.stats.discarded_step_paths << '\n';
      return 0;
    }

    if (engine != "sat" && engine != "baseline") throw ValidationError("--engine", "expected sat or baseline");
    run.use_cache = !no_cache;
    run.baseline = engine == "baseline";
    err << "verifying " << model_path << " with bound " << spec.bound << '\n';
    const Report report = verify(net, spec, run);
    out << report_json(report, net) << '\n';
    err << (report.safe ? "safe" : "unknown") << " after " << report.total_seconds << " s\n";
    return report.safe ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace stepreach
