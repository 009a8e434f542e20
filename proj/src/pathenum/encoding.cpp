#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "stepreach/pathenum.hpp"

namespace stepreach {

int VarTable::add(const Atom& a) {
  atoms_.push_back(a);
  return static_cast<int>(atoms_.size());
}

int EncodingContext::trans_var(std::size_t c, std::size_t t, std::size_t j) const {
  if (j == 0 || j > depth) return 0;
  return trans_[c][t][j];
}

int EncodingContext::stutter_var(std::size_t c, std::size_t j) const {
  if (j == 0 || j > depth) return 0;
  return stutter_[c][j];
}

int EncodingContext::shared_var(std::size_t w, std::size_t j) const {
  if (j == 0 || j > depth) return 0;
  return shared_[w][j];
}

int EncodingContext::loc_var(std::size_t c, std::size_t v, std::size_t j) const {
  if (j > depth) return 0;
  return loc_[c][v][j];
}

std::vector<std::size_t> EncodingContext::reach(std::size_t c, std::size_t j) const {
  std::vector<std::size_t> out;
  const auto& ts = net->component(c).transitions;
  for (std::size_t t = 0; t < ts.size(); ++t)
    if (distance[c][ts[t].source] != kUnreachable && distance[c][ts[t].source] + 1 <= j) out.push_back(t);
  return out;
}

namespace {

std::vector<std::size_t> bfs_distance(const Network& net, std::size_t c, std::size_t start) {
  const auto& comp = net.component(c);
  std::vector<std::size_t> dist(comp.locations.size(), kUnreachable);
  std::deque<std::size_t> q{start};
  dist[start] = 0;
  while (!q.empty()) {
    const std::size_t v = q.front();
    q.pop_front();
    for (std::size_t t : net.outgoing(c, v)) {
      const std::size_t w = comp.transitions[t].target;
      if (dist[w] == kUnreachable) {
        dist[w] = dist[v] + 1;
        q.push_back(w);
      }
    }
  }
  return dist;
}

}  // namespace

EncodingContext encode(const Network& net, const SafetySpec& spec, std::size_t l) {
  if (l == 0) throw std::invalid_argument("encode: step depth must be at least 1");
  EncodingContext ctx;
  ctx.net = &net;
  ctx.depth = l;
  const std::size_t m = net.size();
  for (std::size_t c = 0; c < m; ++c) ctx.distance.push_back(bfs_distance(net, c, spec.initial_locations[c]));

  auto usable = [&](std::size_t c, std::size_t t, std::size_t j) {
    const std::size_t d = ctx.distance[c][net.component(c).transitions[t].source];
    return d != kUnreachable && d + 1 <= j;
  };

  // Variables, in a fixed order.
  ctx.trans_.resize(m);
  for (std::size_t c = 0; c < m; ++c) {
    const auto& ts = net.component(c).transitions;
    ctx.trans_[c].assign(ts.size(), std::vector<int>(l + 1, 0));
    for (std::size_t t = 0; t < ts.size(); ++t)
      for (std::size_t j = 1; j <= l; ++j)
        if (usable(c, t, j)) ctx.trans_[c][t][j] = ctx.vars.add({Atom::Kind::trans, c, t, j});
  }
  ctx.stutter_.assign(m, std::vector<int>(l + 1, 0));
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t j = 1; j <= l; ++j) ctx.stutter_[c][j] = ctx.vars.add({Atom::Kind::stutter, c, 0, j});
  const auto& shared = net.shared_labels();
  ctx.shared_.assign(shared.size(), std::vector<int>(l + 1, 0));
  for (std::size_t w = 0; w < shared.size(); ++w)
    for (std::size_t j = 1; j <= l; ++j) ctx.shared_[w][j] = ctx.vars.add({Atom::Kind::shared_label, w, 0, j});
  ctx.loc_.resize(m);
  for (std::size_t c = 0; c < m; ++c) {
    const auto nloc = net.component(c).locations.size();
    ctx.loc_[c].assign(nloc, std::vector<int>(l + 1, 0));
    for (std::size_t v = 0; v < nloc; ++v)
      for (std::size_t j = 0; j <= l; ++j)
        if (ctx.distance[c][v] != kUnreachable && ctx.distance[c][v] <= j) {
          ctx.loc_[c][v][j] = ctx.vars.add({Atom::Kind::loc_at, c, v, j});
          ++ctx.loc_at_count_;
        }
  }
  auto& cnf = ctx.cnf;
  cnf.num_vars = ctx.vars.size();

  for (std::size_t c = 0; c < m; ++c) {
    const auto& comp = net.component(c);
    cnf.add_clause({ctx.loc_[c][spec.initial_locations[c]][0]});
    for (std::size_t j = 1; j <= l; ++j) {
      // Exactly one move per component and step.
      std::vector<int> moves;
      for (std::size_t t = 0; t < comp.transitions.size(); ++t)
        if (int v = ctx.trans_[c][t][j]) moves.push_back(v);
      moves.push_back(ctx.stutter_[c][j]);
      cnf.add_clause(moves);
      for (std::size_t a = 0; a < moves.size(); ++a)
        for (std::size_t b = a + 1; b < moves.size(); ++b) cnf.add_clause({-moves[a], -moves[b]});

      // A transition leaves its source and enters its target.
      for (std::size_t t = 0; t < comp.transitions.size(); ++t) {
        const int tv = ctx.trans_[c][t][j];
        if (!tv) continue;
        cnf.add_clause({-tv, ctx.loc_[c][comp.transitions[t].source][j - 1]});
        cnf.add_clause({-tv, ctx.loc_[c][comp.transitions[t].target][j]});
      }
      // A stutter keeps the location.
      const int st = ctx.stutter_[c][j];
      for (std::size_t v = 0; v < comp.locations.size(); ++v) {
        const int before = ctx.loc_[c][v][j - 1];
        const int after = ctx.loc_[c][v][j];
        if (before && after) {
          cnf.add_clause({-st, -before, after});
          cnf.add_clause({-st, before, -after});
        } else if (after) {
          cnf.add_clause({-st, -after});
        }
      }
      // Being somewhere needs a reason: a stutter or an incoming transition.
      for (std::size_t v = 0; v < comp.locations.size(); ++v) {
        const int after = ctx.loc_[c][v][j];
        if (!after) continue;
        std::vector<int> why{-after, st};
        for (std::size_t t = 0; t < comp.transitions.size(); ++t)
          if (comp.transitions[t].target == v && ctx.trans_[c][t][j]) why.push_back(ctx.trans_[c][t][j]);
        cnf.add_clause(why);
      }
    }
  }

  for (std::size_t j = 1; j <= l; ++j) {
    // Shared labels: occurrence tracking and synchronization.
    for (std::size_t w = 0; w < shared.size(); ++w) {
      const int sh = ctx.shared_[w][j];
      for (std::size_t c : net.sharing_components(shared[w])) {
        const auto& ts = net.component(c).transitions;
        std::vector<int> some{-sh};
        for (std::size_t t = 0; t < ts.size(); ++t) {
          if (ts[t].label != shared[w]) continue;
          const int tv = ctx.trans_[c][t][j];
          if (!tv) continue;
          cnf.add_clause({-tv, sh});
          some.push_back(tv);
        }
        cnf.add_clause(some);
      }
    }
    // At most one shared label per step.
    for (std::size_t a = 0; a < shared.size(); ++a)
      for (std::size_t b = a + 1; b < shared.size(); ++b) cnf.add_clause({-ctx.shared_[a][j], -ctx.shared_[b][j]});
    // Not everybody waits.
    std::vector<int> someone;
    for (std::size_t c = 0; c < m; ++c) someone.push_back(-ctx.stutter_[c][j]);
    cnf.add_clause(someone);
    // A stutter may only be followed by a shared transition of that component.
    if (j < l) {
      for (std::size_t c = 0; c < m; ++c) {
        const auto& ts = net.component(c).transitions;
        for (std::size_t t = 0; t < ts.size(); ++t) {
          if (net.is_shared(ts[t].label)) continue;
          const int next = ctx.trans_[c][t][j + 1];
          if (next) cnf.add_clause({-ctx.stutter_[c][j], -next});
        }
      }
    }
  }

  // Every component ends in its unsafe location.
  for (std::size_t c = 0; c < m; ++c) {
    const int dest = ctx.loc_[c][spec.unsafe_locations[c]][l];
    if (dest)
      cnf.add_clause({dest});
    else
      cnf.add_clause({});
  }
  return ctx;
}

StepPath decode(const std::vector<bool>& model, const EncodingContext& ctx) {
  const Network& net = *ctx.net;
  StepPath p;
  p.moves.assign(ctx.depth, std::vector<std::optional<std::size_t>>(net.size()));
  auto truth = [&](int v) { return v > 0 && static_cast<std::size_t>(v) < model.size() && model[static_cast<std::size_t>(v)]; };
  for (std::size_t j = 1; j <= ctx.depth; ++j) {
    for (std::size_t c = 0; c < net.size(); ++c) {
      int chosen = 0;
      if (truth(ctx.stutter_[c][j])) ++chosen;
      for (std::size_t t = 0; t < net.component(c).transitions.size(); ++t) {
        if (truth(ctx.trans_[c][t][j])) {
          ++chosen;
          p.moves[j - 1][c] = t;
        }
      }
      if (chosen != 1)
        throw std::logic_error("decode: component " + std::to_string(c) + " makes " + std::to_string(chosen) +
                               " moves in step " + std::to_string(j));
    }
  }
  return p;
}

std::optional<sat::Clause> negate_prefix(const StepPath& path, const InfeasiblePrefix& prefix,
                                         const EncodingContext& ctx) {
  const Network& net = *ctx.net;
  if (path.length() > ctx.depth) return std::nullopt;
  sat::Clause clause;
  for (std::size_t c = 0; c < net.size(); ++c) {
    std::size_t taken = 0;
    std::size_t last_step = 0;
    // Stutters before the last pinned move are pinned too, otherwise paths
    // with extra moves in those steps would be blocked as well.
    std::vector<int> waits;
    for (std::size_t j = 0; j < path.length() && taken < prefix.moves[c]; ++j) {
      const auto& mv = path.moves[j][c];
      if (!mv) {
        waits.push_back(-ctx.stutter_var(c, j + 1));
        continue;
      }
      const int v = ctx.trans_var(c, *mv, j + 1);
      if (!v) return std::nullopt;
      clause.push_back(-v);
      clause.insert(clause.end(), waits.begin(), waits.end());
      waits.clear();
      ++taken;
      last_step = j + 1;
    }
    if (taken < prefix.moves[c]) throw std::logic_error("negate_prefix: prefix longer than the path");
    if (prefix.stopped[c]) {
      for (std::size_t j = last_step + 1; j <= ctx.depth; ++j) clause.push_back(-ctx.stutter_var(c, j));
    }
  }
  return clause;
}

}  // namespace stepreach
