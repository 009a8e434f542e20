#include "stepreach/geometry/template_polyhedron.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stepreach/errors.hpp"
#include "stepreach/geometry/support_set.hpp"

namespace stepreach {

TemplatePolyhedron::TemplatePolyhedron(DirectionsPtr dirs, Vector bounds)
    : dirs_(std::move(dirs)), bounds_(std::move(bounds)) {
  if (!dirs_ || static_cast<std::size_t>(bounds_.size()) != dirs_->size())
    throw std::invalid_argument("template bounds do not match the direction set");
}

TemplatePolyhedron TemplatePolyhedron::empty(DirectionsPtr dirs) {
  TemplatePolyhedron t;
  t.bounds_ = Vector::Constant(static_cast<Eigen::Index>(dirs->size()), -std::numeric_limits<double>::infinity());
  t.dirs_ = std::move(dirs);
  t.empty_ = true;
  return t;
}

Vector TemplatePolyhedron::box_upper() const {
  const auto n = static_cast<Eigen::Index>(dimension());
  Vector u(n);
  for (Eigen::Index i = 0; i < n; ++i) u(i) = bounds_(static_cast<Eigen::Index>(DirectionSet::upper_index(i)));
  return u;
}

Vector TemplatePolyhedron::box_lower() const {
  const auto n = static_cast<Eigen::Index>(dimension());
  Vector l(n);
  for (Eigen::Index i = 0; i < n; ++i) l(i) = -bounds_(static_cast<Eigen::Index>(DirectionSet::lower_index(i)));
  return l;
}

HPolytope TemplatePolyhedron::as_polytope() const { return HPolytope(dirs_->matrix(), bounds_); }

double TemplatePolyhedron::support(const Vector& l) const {
  if (empty_) throw EmptySetError("support of an empty template polyhedron");
  if (is_box()) return box_support(box_lower(), box_upper(), l);
  return as_polytope().support(l);
}

bool TemplatePolyhedron::contains(const Vector& x, double tol) const {
  if (empty_) return false;
  return ((dirs_->matrix() * x) - bounds_).maxCoeff() <= tol;
}

bool TemplatePolyhedron::approx_equal(const TemplatePolyhedron& o, double tol) const {
  if (dirs_ != o.dirs_) return false;
  if (empty_ || o.empty_) return empty_ == o.empty_;
  return ((bounds_ - o.bounds_).cwiseAbs().maxCoeff()) <= tol;
}

bool TemplatePolyhedron::operator==(const TemplatePolyhedron& o) const {
  if (dirs_ != o.dirs_ || empty_ != o.empty_) return false;
  return empty_ || same_shape_equal(bounds_, o.bounds_);
}

double box_support(const Vector& lo, const Vector& hi, const Vector& l) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < l.size(); ++i) {
    if (l(i) > 0)
      s += l(i) * hi(i);
    else if (l(i) < 0)
      s += l(i) * lo(i);
  }
  return s;
}

TemplatePolyhedron template_approx(const SupportSet& s, const DirectionsPtr& dirs) {
  if (s.dimension() != dirs->dimension()) throw std::invalid_argument("template_approx: dimension mismatch");
  Vector b(static_cast<Eigen::Index>(dirs->size()));
  for (std::size_t i = 0; i < dirs->size(); ++i) b(static_cast<Eigen::Index>(i)) = s.support(dirs->direction(i));
  return TemplatePolyhedron(dirs, std::move(b));
}

TemplatePolyhedron template_approx(const HPolytope& p, const DirectionsPtr& dirs) {
  if (p.dimension() != dirs->dimension()) throw std::invalid_argument("template_approx: dimension mismatch");
  if (p.is_empty()) return TemplatePolyhedron::empty(dirs);
  Vector b(static_cast<Eigen::Index>(dirs->size()));
  for (std::size_t i = 0; i < dirs->size(); ++i) b(static_cast<Eigen::Index>(i)) = p.support(dirs->direction(i));
  return TemplatePolyhedron(dirs, std::move(b));
}

TemplatePolyhedron template_hull(std::span<const TemplatePolyhedron> sets) {
  const TemplatePolyhedron* first = nullptr;
  Vector b;
  for (const auto& s : sets) {
    if (s.is_empty()) continue;
    if (!first) {
      first = &s;
      b = s.bounds();
      continue;
    }
    if (s.directions() != first->directions())
      throw std::invalid_argument("template_hull: members use different direction sets");
    b = b.cwiseMax(s.bounds());
  }
  if (!first) throw EmptySetError("template_hull of empty members only");
  return TemplatePolyhedron(first->directions(), std::move(b));
}

std::optional<HPolytope> intersect(const TemplatePolyhedron& p, const HPolytope& constraints) {
  if (p.is_empty()) return std::nullopt;
  HPolytope h = p.as_polytope().intersected(constraints);
  if (h.is_empty()) return std::nullopt;
  return h;
}

}  // namespace stepreach
