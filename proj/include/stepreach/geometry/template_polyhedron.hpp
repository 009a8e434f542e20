#pragma once

#include <optional>
#include <span>

#include "stepreach/geometry/directions.hpp"
#include "stepreach/geometry/polytope.hpp"

namespace stepreach {

class SupportSet;

// { x : l_i . x <= b_i for every template direction l_i }.
class TemplatePolyhedron {
 public:
  TemplatePolyhedron() = default;
  TemplatePolyhedron(DirectionsPtr dirs, Vector bounds);
  static TemplatePolyhedron empty(DirectionsPtr dirs);

  bool is_empty() const { return empty_; }
  const DirectionsPtr& directions() const { return dirs_; }
  const Vector& bounds() const { return bounds_; }
  std::size_t dimension() const { return dirs_ ? dirs_->dimension() : 0; }
  bool is_box() const { return dirs_ && dirs_->family() == DirectionFamily::box; }

  // Axis-aligned relaxation read off the first 2n directions (exact for the
  // box family).
  Vector box_lower() const;
  Vector box_upper() const;

  HPolytope as_polytope() const;
  double support(const Vector& l) const;
  bool contains(const Vector& x, double tol = kTolerance) const;

  // Same directions and bounds within an absolute tolerance.
  bool approx_equal(const TemplatePolyhedron& o, double tol = kTolerance) const;
  bool operator==(const TemplatePolyhedron& o) const;

 private:
  DirectionsPtr dirs_;
  Vector bounds_;
  bool empty_ = false;
};

TemplatePolyhedron template_approx(const SupportSet& s, const DirectionsPtr& dirs);
// Template over-approximation of a polytope; empty result when it is infeasible.
TemplatePolyhedron template_approx(const HPolytope& p, const DirectionsPtr& dirs);

// Componentwise maximum over the nonempty members.  Throws EmptySetError if
// every member is empty.
TemplatePolyhedron template_hull(std::span<const TemplatePolyhedron> sets);

// p's rows plus the given constraint rows, or nullopt when infeasible.
std::optional<HPolytope> intersect(const TemplatePolyhedron& p, const HPolytope& constraints);

// Closed-form support of the box [lo, hi].
double box_support(const Vector& lo, const Vector& hi, const Vector& l);

}  // namespace stepreach
