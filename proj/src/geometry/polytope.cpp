#include "stepreach/geometry/polytope.hpp"

#include "stepreach/errors.hpp"
#include "stepreach/geometry/lp.hpp"

namespace stepreach {

HPolytope HPolytope::universe(std::size_t dim) {
  return HPolytope(Matrix(0, static_cast<Eigen::Index>(dim)), Vector(0));
}

HPolytope HPolytope::box(const Vector& lower, const Vector& upper) {
  const Eigen::Index n = lower.size();
  Matrix A = Matrix::Zero(2 * n, n);
  Vector b(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    A(2 * i, i) = 1.0;
    b(2 * i) = upper(i);
    A(2 * i + 1, i) = -1.0;
    b(2 * i + 1) = -lower(i);
  }
  return HPolytope(std::move(A), std::move(b));
}

HPolytope HPolytope::intersected(const HPolytope& other) const {
  Matrix A2(A.rows() + other.A.rows(), A.cols());
  A2 << A, other.A;
  Vector b2(b.size() + other.b.size());
  b2 << b, other.b;
  return HPolytope(std::move(A2), std::move(b2));
}

bool HPolytope::contains(const Vector& x, double tol) const {
  if (A.rows() == 0) return true;
  return ((A * x) - b).maxCoeff() <= tol;
}

bool HPolytope::is_empty() const { return !lp::is_feasible(A, b); }

std::optional<Vector> HPolytope::feasible_point() const { return lp::feasible_point(A, b); }

std::optional<double> HPolytope::support_or_unbounded(const Vector& l) const {
  const lp::Result r = lp::maximize(A, b, l);
  if (r.status == lp::Status::infeasible) throw EmptySetError("support of an empty polytope");
  if (r.status == lp::Status::unbounded) return std::nullopt;
  return r.value;
}

double HPolytope::support(const Vector& l) const {
  auto v = support_or_unbounded(l);
  if (!v) throw UnboundedError("polytope is unbounded in the requested direction");
  return *v;
}

}  // namespace stepreach
