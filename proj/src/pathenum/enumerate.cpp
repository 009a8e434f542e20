#include <cassert>
#include <chrono>
#include <fstream>
#include <map>
#include <stdexcept>

#include "stepreach/pathenum.hpp"

namespace stepreach {

namespace {

// Shortest leading run of steps whose interleavings already exceed k.  Every
// step path starting with it is too long as well.
StepPath too_long_prefix(const StepPath& p, const Network& net, std::size_t k) {
  StepPath head;
  std::size_t events = 0;
  for (std::size_t j = 0; j < p.length(); ++j) {
    head.moves.push_back(p.moves[j]);
    events += p.labels(net, j).size();
    if (events > k) break;
  }
  return head;
}

// Negation of every move and stutter of the (possibly partial) step path.
sat::Clause block_exact(const StepPath& p, const EncodingContext& ctx) {
  sat::Clause clause;
  for (std::size_t j = 0; j < p.length(); ++j)
    for (std::size_t c = 0; c < p.moves[j].size(); ++c)
      clause.push_back(p.moves[j][c] ? -ctx.trans_var(c, *p.moves[j][c], j + 1) : -ctx.stutter_var(c, j + 1));
  return clause;
}

std::size_t transition_total(const Network& net) {
  std::size_t n = 0;
  for (const auto& comp : net.components()) n += comp.transitions.size();
  return n;
}

}  // namespace

EnumerationResult enumerate(const Network& net, const SafetySpec& spec, const FeasibilityFn& feasibility,
                            const EnumerationOptions& options) {
  EnumerationResult result;
  auto& stats = result.stats;
  const std::size_t k = static_cast<std::size_t>(std::max(spec.bound, 0));

  // Zero jumps: only possible when the run starts in the unsafe locations.
  if (spec.initial_locations == spec.unsafe_locations) {
    ShallowPath empty;
    empty.moves.resize(net.size());
    ++stats.shallow_paths;
    if (feasibility(empty).feasible) {
      result.safe = false;
      result.witness = empty;
      return result;
    }
  }

  std::map<ShallowPath, InfeasiblePrefix> analyzed;
  // Infeasible prefixes found so far, anchored at the step path they came from.
  std::vector<std::pair<StepPath, InfeasiblePrefix>> blocked;
  // Leading steps already over the bound; valid at every later depth.
  std::vector<StepPath> too_long;

  for (std::size_t l = 1; l <= k; ++l) {
    EncodingContext ctx = encode(net, spec, l);
    const auto bound = l * (transition_total(net) + net.size() + net.shared_labels().size()) + ctx.loc_at_count();
    if (static_cast<std::size_t>(ctx.vars.size()) > bound)
      throw std::logic_error("encode: variable count exceeds its size bound");
    if (!options.dump_cnf_prefix.empty()) {
      std::ofstream out(options.dump_cnf_prefix + ".l" + std::to_string(l) + ".cnf");
      out << ctx.cnf.to_dimacs();
    }
    if (ctx.cnf.has_empty_clause()) continue;

    sat::Solver solver(options.seed);
    solver.ensure_vars(ctx.cnf.num_vars);
    solver.add_cnf(ctx.cnf);
    for (const auto& [path, prefix] : blocked) {
      if (auto clause = negate_prefix(path, prefix, ctx)) {
        solver.add_clause(*clause);
        ++stats.negations;
      }
    }
    for (const auto& head : too_long)
      if (head.length() <= l) solver.add_clause(block_exact(head, ctx));

    bool found = false;
    bool valid = false;
    for (;;) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto status = solver.solve();
      stats.sat_seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      ++stats.sat_calls;
      if (status == sat::Status::unsat) break;
      found = true;
      const StepPath path = decode(solver.model(), ctx);
      assert(is_valid_step_path(net, spec, path));

      if (path.interleaving_length(net) > k) {
        ++stats.discarded_step_paths;
        too_long.push_back(too_long_prefix(path, net, k));
        solver.add_clause(block_exact(too_long.back(), ctx));
        continue;
      }
      valid = true;
      ++stats.step_paths;
      const ShallowPath shallow = to_shallow(path);
      if (options.on_step_path) options.on_step_path(path, shallow);

      InfeasiblePrefix prefix;
      if (auto it = analyzed.find(shallow); it != analyzed.end()) {
        prefix = it->second;
      } else {
        ++stats.shallow_paths;
        FeasibilityVerdict verdict = feasibility(shallow);
        if (verdict.feasible) {
          result.safe = false;
          result.witness = shallow;
          return result;
        }
        prefix = verdict.prefix;
        analyzed.emplace(shallow, prefix);
      }
      auto clause = negate_prefix(path, prefix, ctx);
      if (!clause) throw std::logic_error("enumerate: prefix of the current path cannot be negated");
      solver.add_clause(*clause);
      ++stats.negations;
      blocked.emplace_back(path, prefix);
    }
    if (options.early_exit && found && !valid) break;
  }
  return result;
}

}  // namespace stepreach
