#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stepreach/geometry/directions.hpp"
#include "stepreach/geometry/polytope.hpp"
#include "stepreach/linalg.hpp"

namespace stepreach {

inline constexpr std::string_view kStutterLabel = "stutter";

// coeffs . x <= bound over a component's own variables.
struct LinearConstraint {
  std::vector<double> coeffs;
  double bound = 0.0;
  bool operator==(const LinearConstraint&) const = default;
};

// x' = A x + u with u in the box [u_lower, u_upper].
struct Flow {
  Matrix A;
  Vector u_lower;
  Vector u_upper;
  bool operator==(const Flow& o) const {
    return same_shape_equal(A, o.A) && same_shape_equal(u_lower, o.u_lower) && same_shape_equal(u_upper, o.u_upper);
  }
};

struct Location {
  std::string id;
  Flow flow;
  std::vector<LinearConstraint> invariant;
  bool operator==(const Location&) const = default;
};

// x' = R x + c
struct Reset {
  Matrix R;
  Vector c;
  bool is_identity() const;
  bool operator==(const Reset& o) const { return same_shape_equal(R, o.R) && same_shape_equal(c, o.c); }
};

struct Transition {
  std::string label;
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<LinearConstraint> guard;
  Reset reset;
  bool operator==(const Transition&) const = default;
};

struct ComponentAutomaton {
  std::string name;
  std::vector<std::string> variables;
  std::vector<Location> locations;
  std::vector<Transition> transitions;
  std::size_t initial_location = 0;

  std::size_t dimension() const { return variables.size(); }
  std::optional<std::size_t> find_location(std::string_view id) const;
  bool operator==(const ComponentAutomaton&) const = default;
};

// Components in a fixed order; shared labels and the block layout of the
// composed variable vector are derived on construction.
class Network {
 public:
  Network() = default;
  // Validates the components; throws ValidationError.
  explicit Network(std::vector<ComponentAutomaton> components);

  const std::vector<ComponentAutomaton>& components() const { return components_; }
  const ComponentAutomaton& component(std::size_t c) const { return components_[c]; }
  std::size_t size() const { return components_.size(); }
  std::size_t total_dimension() const { return total_dim_; }
  std::size_t offset(std::size_t c) const { return offsets_[c]; }

  // Sorted; a label is shared iff it occurs in two or more components.
  const std::vector<std::string>& shared_labels() const { return shared_labels_; }
  bool is_shared(const std::string& label) const;
  // Index into shared_labels(), if shared.
  std::optional<std::size_t> shared_index(const std::string& label) const;
  // Components whose alphabet contains the label, ascending.
  const std::vector<std::size_t>& sharing_components(const std::string& label) const;
  // Transition ids of component c leaving location v.
  const std::vector<std::size_t>& outgoing(std::size_t c, std::size_t v) const { return outgoing_[c][v]; }

  bool operator==(const Network& o) const { return components_ == o.components_; }

 private:
  std::vector<ComponentAutomaton> components_;
  std::vector<std::size_t> offsets_;
  std::size_t total_dim_ = 0;
  std::vector<std::string> shared_labels_;
  std::map<std::string, std::vector<std::size_t>> label_components_;
  std::vector<std::vector<std::vector<std::size_t>>> outgoing_;
};

struct SafetySpec {
  std::vector<std::size_t> initial_locations;
  HPolytope initial_set;
  std::vector<std::size_t> unsafe_locations;
  HPolytope unsafe_set;
  int bound = 1;
  double time_step = 0.01;
  double time_horizon = 20.0;
  DirectionFamily directions = DirectionFamily::box;
};

Network parse_model(std::string_view text);
SafetySpec parse_config(std::string_view text, const Network& net);
std::string serialize_model(const Network& net);
std::string serialize_config(const SafetySpec& spec, const Network& net);

// Checks the configuration rules (bound, step sizes, set containment).
// parse_config calls this; callers that override fields call it again.
void validate_config(const SafetySpec& spec, const Network& net);

struct ProductStats {
  std::uint64_t locations = 0;
  std::uint64_t transitions = 0;
  bool operator==(const ProductStats&) const = default;
};

// Size of the explicit parallel composition, computed without building it.
// Implicit stutter self-loops are not counted.
ProductStats product_stats(const Network& net);

// Number of flowpipe segments for the given step and horizon.
std::size_t segment_count(double time_step, double time_horizon);

}  // namespace stepreach
