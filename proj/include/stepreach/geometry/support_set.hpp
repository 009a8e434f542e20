#pragma once

#include <memory>
#include <optional>

#include "stepreach/geometry/polytope.hpp"

namespace stepreach {

class TemplatePolyhedron;

// Convex compact set given implicitly by its support function.  Built from
// atoms (H-polytope, box, infinity-norm ball) with affine maps, Minkowski
// sums and convex hulls of unions.  Values are immutable and cheap to copy.
class SupportSet {
 public:
  // Throws EmptySetError / UnboundedError unless p is nonempty and bounded.
  static SupportSet polytope(HPolytope p);
  static SupportSet box(Vector lower, Vector upper);
  static SupportSet ball(std::size_t dim, double radius);
  static SupportSet from_template(const TemplatePolyhedron& t);

  // { M x + offset : x in s }
  static SupportSet affine_map(Matrix M, const SupportSet& s, std::optional<Vector> offset = std::nullopt);
  static SupportSet minkowski_sum(const SupportSet& a, const SupportSet& b);
  static SupportSet convex_hull(const SupportSet& a, const SupportSet& b);

  std::size_t dimension() const;
  double support(const Vector& l) const;

  struct Node;

 private:
  explicit SupportSet(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

inline double support(const SupportSet& s, const Vector& l) { return s.support(l); }

}  // namespace stepreach
