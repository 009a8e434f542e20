#include <chrono>
#include <fstream>

#include <json.hpp>

#include "stepreach/cli.hpp"

namespace stepreach {

using nlohmann::json;

Report verify(const Network& net, const SafetySpec& spec, const RunOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  Report r;
  if (options.baseline) {
    r.engine = "baseline";
    const ProductAutomaton prod = build_product(net);
    const BaselineResult b = bfs_reach(net, prod, spec);
    r.safe = b.safe;
    r.hit_location = b.hit_location;
    if (!b.safe) {
      r.hit_segment = b.hit_segment;
      r.certificate = b.certificate;
    }
    r.reach.postc = b.postc;
    r.reach.postd = b.postd;
    r.reach.states = b.states;
  } else {
    EngineOptions eo;
    eo.use_cache = options.use_cache;
    eo.workers = options.workers;
    eo.record_tree = !options.dump_tree.empty();
    eo.flowpipe_dir = options.dump_flowpipes;
    ReachabilityEngine engine(net, spec, eo);
    EnumerationOptions en;
    en.seed = options.seed;
    en.early_exit = options.early_exit;
    en.dump_cnf_prefix = options.dump_cnf;
    const EnumerationResult res = enumerate(net, spec, engine.callback(), en);
    r.safe = res.safe;
    r.witness = res.witness;
    r.enumeration = res.stats;
    r.reach = engine.stats();
    if (!res.safe) {
      const PathVerdict& v = engine.last_verdict();
      r.hit_location = v.hit_location;
      r.hit_segment = v.hit_segment;
      r.certificate = v.certificate;
    }
    if (!options.dump_tree.empty()) std::ofstream(options.dump_tree) << engine.tree_json() << '\n';
  }
  r.total_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

namespace {

json location_names(const Network& net, const std::vector<std::size_t>& loc) {
  json out = json::array();
  for (std::size_t c = 0; c < loc.size(); ++c) out.push_back(net.component(c).locations[loc[c]].id);
  return out;
}

json shallow_json(const ShallowPath& p, const Network& net) {
  json out = json::array();
  for (std::size_t c = 0; c < p.moves.size(); ++c) {
    json labels = json::array();
    json targets = json::array();
    for (std::size_t t : p.moves[c]) {
      const auto& tr = net.component(c).transitions[t];
      labels.push_back(tr.label);
      targets.push_back(net.component(c).locations[tr.target].id);
    }
    out.push_back({{"component", net.component(c).name}, {"labels", labels}, {"locations", targets}});
  }
  return out;
}

}  // namespace

std::string report_json(const Report& r, const Network& net) {
  json doc;
  doc["schema"] = kReportSchema;
  doc["engine"] = r.engine;
  doc["verdict"] = r.safe ? "safe" : "unknown";
  doc["witness"] = r.witness ? shallow_json(*r.witness, net) : json(nullptr);
  if (!r.safe && !r.hit_location.empty()) {
    json hit;
    hit["location"] = location_names(net, r.hit_location);
    hit["segment"] = r.hit_segment ? json(*r.hit_segment) : json(nullptr);
    std::vector<double> point(r.certificate.data(), r.certificate.data() + r.certificate.size());
    hit["point"] = point;
    doc["hit"] = hit;
  } else {
    doc["hit"] = nullptr;
  }
  doc["stats"] = {{"step_paths", r.enumeration.step_paths},
                  {"discarded_step_paths", r.enumeration.discarded_step_paths},
                  {"shallow_paths", r.enumeration.shallow_paths},
                  {"sat_calls", r.enumeration.sat_calls},
                  {"negations", r.enumeration.negations},
                  {"postc", r.reach.postc},
                  {"postd", r.reach.postd},
                  {"flowpipe_cache_hits", r.reach.flowpipe_hits},
                  {"successor_cache_hits", r.reach.successor_hits},
                  {"cache_hits", r.reach.flowpipe_hits + r.reach.successor_hits},
                  {"symbolic_states", r.reach.states}};
  doc["time"] = {{"sat", r.enumeration.sat_seconds},
                 {"postc", r.reach.postc_seconds},
                 {"postd", r.reach.postd_seconds},
                 {"total", r.total_seconds}};
  return doc.dump();
}

std::string step_path_json(const StepPath& path, const Network& net) {
  json steps = json::array();
  for (std::size_t j = 0; j < path.length(); ++j) {
    json step = json::array();
    for (std::size_t c = 0; c < net.size(); ++c) {
      const auto& mv = path.moves[j][c];
      step.push_back({{"comp", net.component(c).name},
                      {"move", mv ? net.component(c).transitions[*mv].label : std::string(kStutterLabel)}});
    }
    steps.push_back(step);
  }
  return json{{"steps", steps},
              {"shallow", shallow_json(to_shallow(path), net)},
              {"interleaving_length", path.interleaving_length(net)}}
      .dump();
}

}  // namespace stepreach
