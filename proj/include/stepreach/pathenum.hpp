#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "stepreach/composition.hpp"
#include "stepreach/model.hpp"
#include "stepreach/satcore.hpp"

namespace stepreach {

// A path in step semantics: in every step each component either takes one
// transition or stutters.
struct StepPath {
  // moves[j][c] is the transition id taken by component c in step j + 1, or
  // nullopt for a stutter.
  std::vector<std::vector<std::optional<std::size_t>>> moves;

  std::size_t length() const { return moves.size(); }
  // Sorted non-stutter labels of step j (0-based).
  std::vector<std::string> labels(const Network& net, std::size_t j) const;
  // Sum over steps of the number of distinct labels, i.e. the length of every
  // interleaving the step path stands for.
  std::size_t interleaving_length(const Network& net) const;
  bool operator==(const StepPath&) const = default;
};

// Stutter-free per-component transition sequences.
struct ShallowPath {
  std::vector<std::vector<std::size_t>> moves;
  auto operator<=>(const ShallowPath&) const = default;
  std::size_t total_moves() const;
};

// One product step: the participating (component, transition) pairs.
using Event = std::vector<Participant>;
using Interleaving = std::vector<Event>;

// Per component: how many leading moves of the shallow path are pinned, and
// whether the component is pinned to make no further move after them.
struct InfeasiblePrefix {
  std::vector<std::size_t> moves;
  std::vector<bool> stopped;
  static InfeasiblePrefix whole(const ShallowPath& p);
  bool operator==(const InfeasiblePrefix&) const = default;
};

// Boolean atoms of the step encoding.
struct Atom {
  enum class Kind { trans, stutter, shared_label, loc_at };
  Kind kind = Kind::trans;
  std::size_t owner = 0;  // component, or shared-label index
  std::size_t index = 0;  // transition id or location id (unused otherwise)
  std::size_t step = 0;
};

class VarTable {
 public:
  int add(const Atom& a);
  const Atom& atom(int var) const { return atoms_.at(static_cast<std::size_t>(var - 1)); }
  int size() const { return static_cast<int>(atoms_.size()); }

 private:
  std::vector<Atom> atoms_;
};

class EncodingContext {
 public:
  const Network* net = nullptr;
  std::size_t depth = 0;
  // distance[c][v]: graph distance from the initial location; max() if unreachable.
  std::vector<std::vector<std::size_t>> distance;
  VarTable vars;
  sat::Cnf cnf;

  // 0 when the atom was not created (pruned by reachability).
  int trans_var(std::size_t c, std::size_t t, std::size_t j) const;
  int stutter_var(std::size_t c, std::size_t j) const;
  int shared_var(std::size_t w, std::size_t j) const;
  int loc_var(std::size_t c, std::size_t v, std::size_t j) const;
  // Transitions usable at step j: source within distance j - 1.
  std::vector<std::size_t> reach(std::size_t c, std::size_t j) const;
  std::size_t loc_at_count() const { return loc_at_count_; }

  std::vector<std::vector<std::vector<int>>> trans_;  // [c][t][j]
  std::vector<std::vector<int>> stutter_;             // [c][j]
  std::vector<std::vector<int>> shared_;              // [w][j]
  std::vector<std::vector<std::vector<int>>> loc_;    // [c][v][j]
  std::size_t loc_at_count_ = 0;
};

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

// Step paths of length l from the initial to the unsafe location vector.
EncodingContext encode(const Network& net, const SafetySpec& spec, std::size_t l);

// Throws std::logic_error if the model does not describe a valid step path.
StepPath decode(const std::vector<bool>& model, const EncodingContext& ctx);

ShallowPath to_shallow(const StepPath& p);

// Clause excluding every step path that agrees with `path` on the pinned
// moves and the stutters before them (at the same steps) and stutters where
// the prefix says a component stopped.  Returns nullopt when some pinned atom does not exist at this
// depth, in which case nothing needs to be blocked.
std::optional<sat::Clause> negate_prefix(const StepPath& path, const InfeasiblePrefix& prefix, const EncodingContext& ctx);

// Checks the structural step-path rules against the component graphs.
bool is_valid_step_path(const Network& net, const SafetySpec& spec, const StepPath& p, std::string* why = nullptr);

// All interleavings (linearizations respecting per-component order and
// synchronization) of a shallow path, up to `limit` of them.
std::vector<Interleaving> interleavings(const Network& net, const ShallowPath& p,
                                        std::size_t limit = std::numeric_limits<std::size_t>::max());

struct FeasibilityVerdict {
  bool feasible = false;
  InfeasiblePrefix prefix;  // meaningful when infeasible
};

using FeasibilityFn = std::function<FeasibilityVerdict(const ShallowPath&)>;

struct EnumerationOptions {
  std::uint64_t seed = 0;
  // Stop with Safe at the first depth whose paths are all too long.  Off by
  // default: longer step depths can still hold shorter interleavings.
  bool early_exit = false;
  // Called for every step path within the bound, with its shallow form.
  std::function<void(const StepPath&, const ShallowPath&)> on_step_path;
  // When set, the initial formula of each depth l is written to <prefix>.l<l>.cnf.
  std::string dump_cnf_prefix;
};

struct EnumerationStats {
  std::uint64_t step_paths = 0;
  std::uint64_t discarded_step_paths = 0;
  std::uint64_t shallow_paths = 0;
  std::uint64_t sat_calls = 0;
  std::uint64_t negations = 0;
  double sat_seconds = 0.0;
};

struct EnumerationResult {
  bool safe = true;
  std::optional<ShallowPath> witness;
  EnumerationStats stats;
};

EnumerationResult enumerate(const Network& net, const SafetySpec& spec, const FeasibilityFn& feasibility,
                            const EnumerationOptions& options = {});

}  // namespace stepreach
