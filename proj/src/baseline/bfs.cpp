#include <deque>
#include <functional>
#include <map>

#include "stepreach/baseline.hpp"
#include "stepreach/composition.hpp"
#include "stepreach/engine.hpp"

namespace stepreach {

std::vector<Interleaving> bfs_paths(const ProductAutomaton& prod, const std::vector<std::size_t>& init,
                                    const std::vector<std::size_t>& unsafe, std::size_t k) {
  const std::size_t n = prod.locations.size();
  const std::size_t goal = prod.index(unsafe);
  // Backward distance to the goal prunes the search.
  std::vector<std::vector<std::size_t>> incoming(n);
  for (std::size_t t = 0; t < prod.transitions.size(); ++t) incoming[prod.transitions[t].target].push_back(t);
  std::vector<std::size_t> dist(n, kUnreachable);
  std::deque<std::size_t> q{goal};
  dist[goal] = 0;
  while (!q.empty()) {
    const std::size_t v = q.front();
    q.pop_front();
    for (std::size_t t : incoming[v]) {
      const std::size_t u = prod.transitions[t].source;
      if (dist[u] == kUnreachable) {
        dist[u] = dist[v] + 1;
        q.push_back(u);
      }
    }
  }

  std::vector<Interleaving> out;
  Interleaving path;
  std::function<void(std::size_t)> dfs = [&](std::size_t v) {
    if (v == goal) out.push_back(path);
    if (path.size() == k) return;
    for (std::size_t t : prod.outgoing[v]) {
      const auto& tr = prod.transitions[t];
      if (dist[tr.target] == kUnreachable || path.size() + 1 + dist[tr.target] > k) continue;
      path.push_back(tr.participants);
      dfs(tr.target);
      path.pop_back();
    }
  };
  const std::size_t start = prod.index(init);
  if (dist[start] != kUnreachable && dist[start] <= k) dfs(start);
  return out;
}

BaselineResult bfs_reach(const Network& net, const ProductAutomaton& prod, const SafetySpec& spec) {
  BaselineResult res;
  const DirectionsPtr dirs = DirectionSet::get(spec.directions, net.total_dimension());
  const std::size_t goal = prod.index(spec.unsafe_locations);
  std::map<std::size_t, ComposedLocation> locs;
  auto location = [&](std::size_t v) -> const ComposedLocation& {
    auto it = locs.find(v);
    if (it == locs.end()) it = locs.emplace(v, compose_location(net, prod.locations[v])).first;
    return it->second;
  };
  std::map<std::size_t, std::vector<Vector>> seen;
  auto fresh = [&](std::size_t v, const TemplatePolyhedron& C) {
    auto& list = seen[v];
    for (const auto& b : list)
      if (b.size() == C.bounds().size() && (b - C.bounds()).cwiseAbs().maxCoeff() <= kTolerance) return false;
    list.push_back(C.bounds());
    return true;
  };

  struct Item {
    std::size_t loc;
    TemplatePolyhedron C;
    std::size_t depth;
  };
  std::deque<Item> queue;
  const std::size_t start = prod.index(spec.initial_locations);
  TemplatePolyhedron init = template_approx(spec.initial_set, dirs);
  fresh(start, init);
  queue.push_back({start, std::move(init), 0});
  const std::size_t k = static_cast<std::size_t>(std::max(spec.bound, 0));
  while (!queue.empty()) {
    Item item = std::move(queue.front());
    queue.pop_front();
    ++res.states;
    const Flowpipe fp = postC(location(item.loc), item.C, spec.time_step, spec.time_horizon);
    ++res.postc;
    if (fp.segments.empty()) continue;
    if (item.loc == goal) {
      if (auto hit = unsafe_hit(fp, spec.unsafe_set)) {
        res.safe = false;
        res.hit_location = prod.locations[item.loc];
        res.hit_segment = hit->segment;
        res.certificate = hit->point;
        return res;
      }
    }
    if (item.depth == k) continue;
    for (std::size_t t : prod.outgoing[item.loc]) {
      const auto& tr = prod.transitions[t];
      const ComposedTransition ct = make_compatible(net, tr.participants);
      TemplatePolyhedron next = postD(fp, ct, location(tr.target));
      ++res.postd;
      if (next.is_empty() || !fresh(tr.target, next)) continue;
      queue.push_back({tr.target, std::move(next), item.depth + 1});
    }
  }
  return res;
}

}  // namespace stepreach
