#pragma once

#include <span>
#include <string>
#include <vector>

#include "stepreach/geometry/polytope.hpp"
#include "stepreach/model.hpp"

namespace stepreach {

// Product location: block-diagonal flow, product input box and conjoined
// invariants over the composed variable vector.
struct ComposedLocation {
  std::vector<std::size_t> locations;
  Matrix A;
  Vector u_lower;
  Vector u_upper;
  HPolytope invariant;
};

ComposedLocation compose_location(const Network& net, std::span<const std::size_t> locations);

// Rows of component c's constraints embedded into the composed vector.
HPolytope embed_constraints(const Network& net, std::size_t c, const std::vector<LinearConstraint>& rows);

struct Participant {
  std::size_t component = 0;
  std::size_t transition = 0;
  auto operator<=>(const Participant&) const = default;
};

// One synchronized (or local) discrete step over the composed vector.
struct ComposedTransition {
  std::string label;
  std::vector<Participant> participants;  // ascending component order
  HPolytope guard;
  Matrix R;
  Vector c;
};

// Conjoins the participants' guards and builds the block-diagonal reset with
// identity blocks for components that do not take part.
ComposedTransition make_compatible(const Network& net, std::span<const Participant> participants);

}  // namespace stepreach
