#include "stepreach/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>
#include <thread>

#include <json.hpp>

namespace stepreach {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool close(const Vector& a, const Vector& b) {
  return a.size() == b.size() && (a.size() == 0 || (a - b).cwiseAbs().maxCoeff() <= kTolerance);
}

std::string digest(const Vector& b) {
  std::uint64_t h = 1469598103934665603ull;
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    double v = b(i);
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof v);
    for (unsigned char x : bytes) {
      h ^= x;
      h *= 1099511628211ull;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

ReachabilityEngine::ReachabilityEngine(const Network& net, const SafetySpec& spec, EngineOptions options)
    : net_(net), spec_(spec), options_(std::move(options)) {
  dirs_ = DirectionSet::get(spec.directions, net.total_dimension());
  init_ = template_approx(spec.initial_set, dirs_);
  if (options_.workers == 0) options_.workers = 1;
}

const ComposedLocation& ReachabilityEngine::location(const std::vector<std::size_t>& loc) {
  auto it = locations_.find(loc);
  if (it == locations_.end()) it = locations_.emplace(loc, compose_location(net_, loc)).first;
  return it->second;
}

const ComposedTransition& ReachabilityEngine::transition(const std::vector<Participant>& ev) {
  auto it = transitions_.find(ev);
  if (it == transitions_.end()) it = transitions_.emplace(ev, make_compatible(net_, ev)).first;
  return it->second;
}

std::optional<std::size_t> ReachabilityEngine::find_flowpipe(const SymbolicState& s) const {
  if (!options_.use_cache) return std::nullopt;
  auto it = flow_index_.find(s.loc);
  if (it == flow_index_.end()) return std::nullopt;
  for (const auto& [bounds, id] : it->second)
    if (close(bounds, s.C.bounds())) return id;
  return std::nullopt;
}

Flowpipe ReachabilityEngine::compute_flowpipe(const SymbolicState& s) {
  return postC(locations_.at(s.loc), s.C, spec_.time_step, spec_.time_horizon);
}

void ReachabilityEngine::dump_flowpipe(const SymbolicState& s, const Flowpipe& fp) {
  if (options_.flowpipe_dir.empty()) return;
  namespace fs = std::filesystem;
  fs::create_directories(options_.flowpipe_dir);
  const std::string stem = (fs::path(options_.flowpipe_dir) / ("fp" + std::to_string(dumped_++))).string();
  std::ofstream csv(stem + ".csv");
  write_flowpipe_csv(csv, fp);
  nlohmann::json side;
  std::vector<std::string> names;
  for (std::size_t c = 0; c < net_.size(); ++c) names.push_back(net_.component(c).locations[s.loc[c]].id);
  side["locations"] = names;
  side["cursors"] = s.cursors;
  side["time_step"] = spec_.time_step;
  side["time_horizon"] = spec_.time_horizon;
  side["directions"] = to_string(spec_.directions);
  side["segments"] = fp.segments.size();
  side["truncated_at"] = fp.truncated_at ? nlohmann::json(*fp.truncated_at) : nlohmann::json(nullptr);
  std::ofstream(stem + ".json") << side.dump(1) << '\n';
}

ReachabilityEngine::FlowRef ReachabilityEngine::store_flowpipe(const SymbolicState& s, Flowpipe fp) {
  dump_flowpipe(s, fp);
  auto ptr = std::make_shared<const Flowpipe>(std::move(fp));
  if (!options_.use_cache) return {ptr, kNoId};
  flowpipes_.push_back(ptr);
  const std::size_t id = flowpipes_.size() - 1;
  flow_index_[s.loc].emplace_back(s.C.bounds(), id);
  return {ptr, id};
}

ReachabilityEngine::FlowRef ReachabilityEngine::flowpipe_for(const SymbolicState& s) {
  if (auto id = find_flowpipe(s)) {
    ++stats_.flowpipe_hits;
    return {flowpipes_[*id], *id};
  }
  location(s.loc);
  const auto t0 = Clock::now();
  Flowpipe fp = compute_flowpipe(s);
  stats_.postc_seconds += since(t0);
  ++stats_.postc;
  return store_flowpipe(s, std::move(fp));
}

InfeasiblePrefix ReachabilityEngine::prefix_from(const ShallowPath& path, const std::vector<std::size_t>& reached) const {
  const std::size_t m = net_.size();
  bool all = true;
  for (std::size_t c = 0; c < m; ++c)
    if (reached[c] < path.moves[c].size()) all = false;
  if (all) return InfeasiblePrefix::whole(path);

  InfeasiblePrefix out;
  out.moves.resize(m);
  out.stopped.assign(m, false);
  for (std::size_t c = 0; c < m; ++c) {
    if (reached[c] == path.moves[c].size()) {
      out.moves[c] = reached[c];
      out.stopped[c] = true;
    } else {
      out.moves[c] = reached[c] + 1;
    }
  }
  // A component that cannot leave its last explored location without a
  // partner that is pinned to never offer the label needs no extra move.
  std::vector<bool> keep(m, false);
  std::vector<bool> dropped(m, false);
  auto pinned_has = [&](std::size_t z, const std::string& label) {
    for (std::size_t i = 0; i < out.moves[z]; ++i)
      if (net_.component(z).transitions[path.moves[z][i]].label == label) return true;
    return false;
  };
  for (std::size_t d = 0; d < m; ++d) {
    if (out.stopped[d] || keep[d]) continue;
    const auto& comp = net_.component(d);
    const std::size_t at =
        reached[d] == 0 ? spec_.initial_locations[d] : comp.transitions[path.moves[d][reached[d] - 1]].target;
    std::vector<std::size_t> blockers;
    bool stuck = true;
    for (std::size_t t : net_.outgoing(d, at)) {
      const std::string& label = comp.transitions[t].label;
      if (!net_.is_shared(label)) {
        stuck = false;
        break;
      }
      bool found = false;
      for (std::size_t z : net_.sharing_components(label)) {
        if (z == d || dropped[z] || pinned_has(z, label)) continue;
        blockers.push_back(z);
        found = true;
        break;
      }
      if (!found) {
        stuck = false;
        break;
      }
    }
    if (!stuck) continue;
    dropped[d] = true;
    out.moves[d] = reached[d];
    for (std::size_t z : blockers) keep[z] = true;
  }
  return out;
}

PathVerdict ReachabilityEngine::run_path(const ShallowPath& path) {
  ++stats_.paths;
  const std::size_t m = net_.size();
  std::vector<std::size_t> sizes(m);
  for (std::size_t c = 0; c < m; ++c) sizes[c] = path.moves[c].size();

  struct Entry {
    SymbolicState s;
    long node = -1;
  };
  std::vector<Node> tree;
  auto record = [&](const SymbolicState& s, long parent, const std::string& label) -> long {
    if (!options_.record_tree) return -1;
    tree.push_back({s.loc, s.cursors, s.C.bounds(), parent, label});
    return static_cast<long>(tree.size()) - 1;
  };
  auto finish = [&](PathVerdict v) {
    if (options_.record_tree) trees_.emplace_back(path, std::move(tree));
    last_ = v;
    return v;
  };

  std::map<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>, std::vector<Vector>> visited;
  auto fresh = [&](const SymbolicState& s) {
    auto& seen = visited[{s.loc, s.cursors}];
    for (const auto& b : seen)
      if (close(b, s.C.bounds())) return false;
    seen.push_back(s.C.bounds());
    return true;
  };

  std::vector<std::size_t> reached(m, 0);
  std::vector<Entry> layer;
  {
    SymbolicState s{spec_.initial_locations, init_, std::vector<std::size_t>(m, 0)};
    fresh(s);
    const long id = record(s, -1, "");
    layer.push_back({std::move(s), id});
    ++stats_.states;
  }

  while (!layer.empty()) {
    // Flowpipes of a layer without leaves are independent, so they may be
    // computed by several workers before the sequential pass.
    std::vector<std::optional<Flowpipe>> ready(layer.size());
    const bool has_leaf = std::any_of(layer.begin(), layer.end(), [&](const Entry& e) { return e.s.cursors == sizes; });
    if (options_.workers > 1 && !has_leaf) {
      std::vector<std::size_t> todo;
      for (std::size_t i = 0; i < layer.size(); ++i) {
        if (find_flowpipe(layer[i].s)) continue;
        bool dup = false;
        if (options_.use_cache)
          for (std::size_t j : todo)
            if (layer[j].s.loc == layer[i].s.loc && close(layer[j].s.C.bounds(), layer[i].s.C.bounds())) dup = true;
        if (!dup) todo.push_back(i);
      }
      for (std::size_t i : todo) location(layer[i].s.loc);
      const auto t0 = Clock::now();
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      const std::size_t nthreads = std::min(options_.workers, todo.size());
      for (std::size_t w = 0; w < nthreads; ++w)
        pool.emplace_back([&] {
          for (std::size_t k = next++; k < todo.size(); k = next++) ready[todo[k]] = compute_flowpipe(layer[todo[k]].s);
        });
      for (auto& th : pool) th.join();
      stats_.postc_seconds += since(t0);
      stats_.postc += todo.size();
    }

    std::vector<Entry> upcoming;
    for (std::size_t i = 0; i < layer.size(); ++i) {
      const SymbolicState& s = layer[i].s;
      const FlowRef fr = ready[i] ? store_flowpipe(s, std::move(*ready[i])) : flowpipe_for(s);
      const Flowpipe& fp = *fr.flow;
      if (fp.segments.empty()) continue;

      if (s.cursors == sizes) {
        if (auto hit = unsafe_hit(fp, spec_.unsafe_set)) {
          PathVerdict v;
          v.feasible = true;
          v.hit_location = s.loc;
          v.hit_segment = hit->segment;
          v.certificate = hit->point;
          return finish(std::move(v));
        }
        continue;
      }

      // Candidate events in component order, shared labels once.
      std::vector<std::vector<Participant>> events;
      std::set<std::string> tried;
      for (std::size_t c = 0; c < m; ++c) {
        if (s.cursors[c] >= sizes[c]) continue;
        const std::size_t tid = path.moves[c][s.cursors[c]];
        const std::string& label = net_.component(c).transitions[tid].label;
        if (!net_.is_shared(label)) {
          events.push_back({{c, tid}});
          continue;
        }
        if (!tried.insert(label).second) continue;
        std::vector<Participant> ev;
        bool ready_all = true;
        for (std::size_t z : net_.sharing_components(label)) {
          if (s.cursors[z] >= sizes[z]) {
            ready_all = false;
            break;
          }
          const std::size_t tz = path.moves[z][s.cursors[z]];
          if (net_.component(z).transitions[tz].label != label) {
            ready_all = false;
            break;
          }
          ev.push_back({z, tz});
        }
        if (ready_all) events.push_back(std::move(ev));
      }

      for (const auto& ev : events) {
        SymbolicState succ{s.loc, TemplatePolyhedron(), s.cursors};
        for (const auto& [c, tid] : ev) {
          succ.loc[c] = net_.component(c).transitions[tid].target;
          ++succ.cursors[c];
        }
        const std::pair<std::size_t, std::vector<Participant>> key{fr.id, ev};
        auto hit = options_.use_cache ? successors_.find(key) : successors_.end();
        if (hit != successors_.end()) {
          ++stats_.successor_hits;
          succ.C = hit->second;
        } else {
          const ComposedTransition& t = transition(ev);
          const ComposedLocation& next = location(succ.loc);
          const auto t0 = Clock::now();
          succ.C = postD(fp, t, next);
          stats_.postd_seconds += since(t0);
          ++stats_.postd;
          if (options_.use_cache) successors_.emplace(key, succ.C);
        }
        if (succ.C.is_empty()) continue;
        for (std::size_t c = 0; c < m; ++c) reached[c] = std::max(reached[c], succ.cursors[c]);
        if (!fresh(succ)) continue;
        const long id = record(succ, layer[i].node, net_.component(ev.front().component).transitions[ev.front().transition].label);
        ++stats_.states;
        upcoming.push_back({std::move(succ), id});
      }
    }
    layer = std::move(upcoming);
  }

  PathVerdict v;
  v.feasible = false;
  v.prefix = prefix_from(path, reached);
  return finish(std::move(v));
}

FeasibilityFn ReachabilityEngine::callback() {
  return [this](const ShallowPath& p) {
    const PathVerdict v = run_path(p);
    return FeasibilityVerdict{v.feasible, v.prefix};
  };
}

std::string ReachabilityEngine::tree_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [path, nodes] : trees_) {
    nlohmann::json entry;
    nlohmann::json moves = nlohmann::json::array();
    for (std::size_t c = 0; c < path.moves.size(); ++c) {
      nlohmann::json labels = nlohmann::json::array();
      for (std::size_t t : path.moves[c]) labels.push_back(net_.component(c).transitions[t].label);
      moves.push_back({{"component", net_.component(c).name}, {"labels", labels}});
    }
    entry["path"] = moves;
    nlohmann::json jn = nlohmann::json::array();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const Node& n = nodes[i];
      std::vector<std::string> names;
      for (std::size_t c = 0; c < n.loc.size(); ++c) names.push_back(net_.component(c).locations[n.loc[c]].id);
      jn.push_back({{"id", i},
                    {"parent", n.parent},
                    {"label", n.label},
                    {"loc", names},
                    {"cursors", n.cursors},
                    {"bounds_digest", digest(n.bounds)}});
    }
    entry["nodes"] = jn;
    out.push_back(entry);
  }
  return out.dump(1);
}

}  // namespace stepreach
