#include <algorithm>
#include <functional>
#include <set>
#include <string>

#include "stepreach/pathenum.hpp"

namespace stepreach {

std::vector<std::string> StepPath::labels(const Network& net, std::size_t j) const {
  std::vector<std::string> out;
  for (std::size_t c = 0; c < moves[j].size(); ++c)
    if (moves[j][c]) out.push_back(net.component(c).transitions[*moves[j][c]].label);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t StepPath::interleaving_length(const Network& net) const {
  std::size_t n = 0;
  for (std::size_t j = 0; j < length(); ++j) n += labels(net, j).size();
  return n;
}

std::size_t ShallowPath::total_moves() const {
  std::size_t n = 0;
  for (const auto& m : moves) n += m.size();
  return n;
}

InfeasiblePrefix InfeasiblePrefix::whole(const ShallowPath& p) {
  InfeasiblePrefix out;
  for (const auto& m : p.moves) {
    out.moves.push_back(m.size());
    out.stopped.push_back(true);
  }
  return out;
}

ShallowPath to_shallow(const StepPath& p) {
  ShallowPath s;
  if (p.moves.empty()) return s;
  s.moves.resize(p.moves.front().size());
  for (const auto& step : p.moves)
    for (std::size_t c = 0; c < step.size(); ++c)
      if (step[c]) s.moves[c].push_back(*step[c]);
  return s;
}

bool is_valid_step_path(const Network& net, const SafetySpec& spec, const StepPath& p, std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  const std::size_t m = net.size();
  std::vector<std::size_t> at = spec.initial_locations;
  for (std::size_t j = 0; j < p.length(); ++j) {
    const auto& step = p.moves[j];
    if (step.size() != m) return fail("step " + std::to_string(j + 1) + " has the wrong width");
    std::set<std::string> shared_here;
    bool anyone = false;
    for (std::size_t c = 0; c < m; ++c) {
      if (!step[c]) continue;
      anyone = true;
      const auto& comp = net.component(c);
      if (*step[c] >= comp.transitions.size()) return fail("unknown transition");
      const auto& t = comp.transitions[*step[c]];
      if (t.source != at[c]) return fail(comp.name + " leaves the wrong location in step " + std::to_string(j + 1));
      if (net.is_shared(t.label)) shared_here.insert(t.label);
      // Only shared moves may follow a stutter.
      if (j > 0 && !p.moves[j - 1][c] && !net.is_shared(t.label))
        return fail(comp.name + " moves locally right after waiting in step " + std::to_string(j + 1));
    }
    if (!anyone) return fail("everybody waits in step " + std::to_string(j + 1));
    if (shared_here.size() > 1) return fail("two shared labels in step " + std::to_string(j + 1));
    for (const auto& w : shared_here)
      for (std::size_t c : net.sharing_components(w))
        if (!step[c] || net.component(c).transitions[*step[c]].label != w)
          return fail(net.component(c).name + " misses shared label " + w);
    for (std::size_t c = 0; c < m; ++c)
      if (step[c]) at[c] = net.component(c).transitions[*step[c]].target;
  }
  if (at != spec.unsafe_locations) return fail("does not end in the unsafe locations");
  return true;
}

std::vector<Interleaving> interleavings(const Network& net, const ShallowPath& p, std::size_t limit) {
  const std::size_t m = net.size();
  std::vector<Interleaving> out;
  std::vector<std::size_t> cur(m, 0);
  Interleaving prefix;
  std::function<void()> rec = [&]() {
    if (out.size() >= limit) return;
    bool done = true;
    for (std::size_t c = 0; c < m; ++c)
      if (cur[c] < p.moves[c].size()) done = false;
    if (done) {
      out.push_back(prefix);
      return;
    }
    std::set<std::string> tried;
    for (std::size_t c = 0; c < m; ++c) {
      if (cur[c] >= p.moves[c].size()) continue;
      const std::string& label = net.component(c).transitions[p.moves[c][cur[c]]].label;
      Event ev;
      if (net.is_shared(label)) {
        if (!tried.insert(label).second) continue;
        bool ready = true;
        for (std::size_t z : net.sharing_components(label)) {
          if (cur[z] >= p.moves[z].size() || net.component(z).transitions[p.moves[z][cur[z]]].label != label) {
            ready = false;
            break;
          }
          ev.push_back({z, p.moves[z][cur[z]]});
        }
        if (!ready) continue;
      } else {
        ev.push_back({c, p.moves[c][cur[c]]});
      }
      for (const auto& pt : ev) ++cur[pt.component];
      prefix.push_back(ev);
      rec();
      prefix.pop_back();
      for (const auto& pt : ev) --cur[pt.component];
    }
  };
  rec();
  return out;
}

}  // namespace stepreach
