#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stepreach/composition.hpp"
#include "stepreach/flowpipe.hpp"
#include "stepreach/model.hpp"
#include "stepreach/pathenum.hpp"

namespace stepreach {

// Discrete successor: every segment meeting the guard is mapped through the
// reset, clipped to the target invariant and aggregated into one template
// hull.  Empty template when no segment survives.
TemplatePolyhedron postD(const Flowpipe& flow, const ComposedTransition& t, const ComposedLocation& next);

struct UnsafeHit {
  std::size_t segment = 0;
  Vector point;  // lies in the segment and in the unsafe set
};

// First segment of the flowpipe that meets the unsafe set.
std::optional<UnsafeHit> unsafe_hit(const Flowpipe& flow, const HPolytope& unsafe);

struct SymbolicState {
  std::vector<std::size_t> loc;
  TemplatePolyhedron C;
  std::vector<std::size_t> cursors;
};

struct EngineOptions {
  bool use_cache = true;
  std::size_t workers = 1;
  // Keep the explored trees for dump_tree().
  bool record_tree = false;
  // When set, every computed flowpipe is written to <dir>/fp<id>.csv plus a
  // JSON sidecar.
  std::string flowpipe_dir;
};

struct EngineStats {
  std::uint64_t postc = 0;
  std::uint64_t postd = 0;
  std::uint64_t flowpipe_hits = 0;
  std::uint64_t successor_hits = 0;
  std::uint64_t states = 0;
  std::uint64_t paths = 0;
  double postc_seconds = 0.0;
  double postd_seconds = 0.0;
};

struct PathVerdict {
  bool feasible = false;
  InfeasiblePrefix prefix;  // when infeasible
  // When feasible: where the unsafe set was met.
  std::vector<std::size_t> hit_location;
  std::size_t hit_segment = 0;
  Vector certificate;
};

// Explores the computation tree of one shallow path at a time.  Flowpipes and
// discrete successors are memoized across paths.
class ReachabilityEngine {
 public:
  ReachabilityEngine(const Network& net, const SafetySpec& spec, EngineOptions options = {});

  PathVerdict run_path(const ShallowPath& path);
  FeasibilityFn callback();

  const EngineStats& stats() const { return stats_; }
  // Verdict of the most recent run_path call.
  const PathVerdict& last_verdict() const { return last_; }
  // Explored trees as JSON, one entry per run_path call.
  std::string tree_json() const;
  // Initial symbolic set (template approximation of the initial set).
  const TemplatePolyhedron& initial_set() const { return init_; }

 private:
  struct Node {
    std::vector<std::size_t> loc;
    std::vector<std::size_t> cursors;
    Vector bounds;
    long parent = -1;
    std::string label;
  };

  // id is kNoId when the cache is off.
  struct FlowRef {
    std::shared_ptr<const Flowpipe> flow;
    std::size_t id;
  };
  static constexpr std::size_t kNoId = static_cast<std::size_t>(-1);

  const ComposedLocation& location(const std::vector<std::size_t>& loc);
  const ComposedTransition& transition(const std::vector<Participant>& ev);
  FlowRef flowpipe_for(const SymbolicState& s);
  FlowRef store_flowpipe(const SymbolicState& s, Flowpipe fp);
  std::optional<std::size_t> find_flowpipe(const SymbolicState& s) const;
  Flowpipe compute_flowpipe(const SymbolicState& s);
  void dump_flowpipe(const SymbolicState& s, const Flowpipe& fp);
  InfeasiblePrefix prefix_from(const ShallowPath& path, const std::vector<std::size_t>& reached) const;

  const Network& net_;
  const SafetySpec& spec_;
  EngineOptions options_;
  DirectionsPtr dirs_;
  TemplatePolyhedron init_;
  EngineStats stats_;
  PathVerdict last_;
  std::size_t dumped_ = 0;

  std::map<std::vector<std::size_t>, ComposedLocation> locations_;
  std::vector<std::shared_ptr<const Flowpipe>> flowpipes_;
  std::map<std::vector<std::size_t>, std::vector<std::pair<Vector, std::size_t>>> flow_index_;
  std::map<std::pair<std::size_t, std::vector<Participant>>, TemplatePolyhedron> successors_;
  std::map<std::vector<Participant>, ComposedTransition> transitions_;
  std::vector<std::pair<ShallowPath, std::vector<Node>>> trees_;
};

}  // namespace stepreach
