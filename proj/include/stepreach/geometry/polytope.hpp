#pragma once

#include <cstddef>
#include <optional>

#include "stepreach/linalg.hpp"

namespace stepreach {

// { x : A x <= b }.  May be empty or unbounded; callers that need a compact
// set check with is_empty()/support().
struct HPolytope {
  Matrix A;
  Vector b;

  HPolytope() = default;
  HPolytope(Matrix a, Vector bound) : A(std::move(a)), b(std::move(bound)) {}

  // The whole space R^dim (no rows).
  static HPolytope universe(std::size_t dim);
  static HPolytope box(const Vector& lower, const Vector& upper);

  std::size_t dimension() const { return static_cast<std::size_t>(A.cols()); }
  std::size_t rows() const { return static_cast<std::size_t>(A.rows()); }

  // Conjunction of both constraint systems (same dimension).
  HPolytope intersected(const HPolytope& other) const;

  bool contains(const Vector& x, double tol = kTolerance) const;
  bool is_empty() const;
  std::optional<Vector> feasible_point() const;

  // max l.x over the set.  Throws EmptySetError / UnboundedError.
  double support(const Vector& l) const;
  // Like support() but returns nullopt instead of throwing on an unbounded ray.
  std::optional<double> support_or_unbounded(const Vector& l) const;

  bool operator==(const HPolytope& o) const { return same_shape_equal(A, o.A) && same_shape_equal(b, o.b); }
};

}  // namespace stepreach
