#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

#include "stepreach/composition.hpp"
#include "stepreach/geometry/support_set.hpp"
#include "stepreach/geometry/template_polyhedron.hpp"

namespace stepreach {

// Segment i covers the time interval [i dt, (i + 1) dt].
struct Flowpipe {
  std::vector<TemplatePolyhedron> segments;
  // Index of the first segment that left the invariant; the pipe stops there.
  std::optional<std::size_t> truncated_at;
};

// Template over-approximation of p intersected with the rows; empty template
// when the intersection is infeasible.  Axis-aligned rows on a box template
// are handled by interval arithmetic.
TemplatePolyhedron clip(const TemplatePolyhedron& p, const HPolytope& rows);

// True when every row has a single nonzero coefficient.
bool axis_aligned(const HPolytope& rows);

// Timed successors of X0 in the location.  Throws EmptyInitialError when X0
// misses the invariant.
Flowpipe postC(const ComposedLocation& loc, const TemplatePolyhedron& X0, double time_step, double time_horizon);
Flowpipe postC(const ComposedLocation& loc, const SupportSet& X0, const DirectionsPtr& dirs, double time_step,
               double time_horizon);

// segment_index,direction_index,l0..l{n-1},bound
void write_flowpipe_csv(std::ostream& out, const Flowpipe& fp);

}  // namespace stepreach
