#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stepreach/engine.hpp"
#include "stepreach/errors.hpp"
#include "stepreach/geometry/lp.hpp"

namespace stepreach {

namespace {

bool is_diagonal(const Matrix& R) {
  for (Eigen::Index i = 0; i < R.rows(); ++i)
    for (Eigen::Index j = 0; j < R.cols(); ++j)
      if (i != j && R(i, j) != 0.0) return false;
  return true;
}

// Some row is violated by every point of the box [lo, hi].
bool box_misses(const Vector& lo, const Vector& hi, const HPolytope& rows) {
  for (Eigen::Index r = 0; r < rows.A.rows(); ++r) {
    double least = 0.0;
    for (Eigen::Index i = 0; i < rows.A.cols(); ++i) {
      const double a = rows.A(r, i);
      least += a > 0 ? a * lo(i) : a * hi(i);
    }
    if (least > rows.b(r) + kTolerance) return true;
  }
  return false;
}

TemplatePolyhedron box_template(const DirectionsPtr& dirs, const Vector& lo, const Vector& hi) {
  Vector b(static_cast<Eigen::Index>(dirs->size()));
  for (std::size_t i = 0; i < dirs->dimension(); ++i) {
    b(static_cast<Eigen::Index>(DirectionSet::upper_index(i))) = hi(static_cast<Eigen::Index>(i));
    b(static_cast<Eigen::Index>(DirectionSet::lower_index(i))) = -lo(static_cast<Eigen::Index>(i));
  }
  return TemplatePolyhedron(dirs, std::move(b));
}

void hull_into(std::optional<Vector>& acc, const Vector& b) {
  if (!acc)
    acc = b;
  else
    *acc = acc->cwiseMax(b);
}

}  // namespace

TemplatePolyhedron postD(const Flowpipe& flow, const ComposedTransition& t, const ComposedLocation& next) {
  if (flow.segments.empty()) throw std::logic_error("postD: empty flowpipe");
  const DirectionsPtr& dirs = flow.segments.front().directions();
  std::optional<Vector> acc;
  const Vector* previous = nullptr;

  const bool fast = flow.segments.front().is_box() && axis_aligned(t.guard) && axis_aligned(next.invariant) &&
                    is_diagonal(t.R);
  if (fast) {
    for (const auto& seg : flow.segments) {
      if (previous && seg.bounds() == *previous) continue;
      previous = &seg.bounds();
      const TemplatePolyhedron g = clip(seg, t.guard);
      if (g.is_empty()) continue;
      const Vector lo = g.box_lower();
      const Vector hi = g.box_upper();
      const Vector d = t.R.diagonal();
      const Vector a = d.cwiseProduct(lo) + t.c;
      const Vector b = d.cwiseProduct(hi) + t.c;
      const TemplatePolyhedron img = clip(box_template(dirs, a.cwiseMin(b), a.cwiseMax(b)), next.invariant);
      if (img.is_empty()) continue;
      hull_into(acc, img.bounds());
    }
  } else {
    const Matrix& D = dirs->matrix();
    const Eigen::Index nd = D.rows();
    const Eigen::Index ng = t.guard.A.rows();
    const Eigen::Index ni = next.invariant.A.rows();
    const Eigen::Index n = D.cols();
    Matrix A(nd + ng + ni, n);
    Vector rhs(nd + ng + ni);
    A.block(0, 0, nd, n) = D;
    if (ng) A.block(nd, 0, ng, n) = t.guard.A;
    if (ni) A.block(nd + ng, 0, ni, n) = next.invariant.A * t.R;
    if (ng) rhs.segment(nd, ng) = t.guard.b;
    if (ni) rhs.segment(nd + ng, ni) = next.invariant.b - next.invariant.A * t.c;
    const Matrix Rt = t.R.transpose();
    for (const auto& seg : flow.segments) {
      if (previous && seg.bounds() == *previous) continue;
      previous = &seg.bounds();
      const Vector lo = seg.box_lower();
      const Vector hi = seg.box_upper();
      if (box_misses(lo, hi, t.guard)) continue;
      const Vector mid = 0.5 * (lo + hi);
      const Vector rad = 0.5 * (hi - lo);
      const Vector img_mid = t.R * mid + t.c;
      const Vector img_rad = t.R.cwiseAbs() * rad;
      if (box_misses(img_mid - img_rad, img_mid + img_rad, next.invariant)) continue;
      rhs.head(nd) = seg.bounds();
      if (!lp::is_feasible(A, rhs)) continue;
      Vector b(nd);
      for (Eigen::Index k = 0; k < nd; ++k) {
        const Vector l = D.row(k).transpose();
        const auto res = lp::maximize(A, rhs, Rt * l);
        if (res.status == lp::Status::unbounded) throw UnboundedError("postD: unbounded successor");
        if (res.status == lp::Status::infeasible) throw std::logic_error("postD: feasibility changed between LPs");
        b(k) = res.value + l.dot(t.c);
      }
      hull_into(acc, b);
    }
  }
  if (!acc) return TemplatePolyhedron::empty(dirs);
  return TemplatePolyhedron(dirs, std::move(*acc));
}

std::optional<UnsafeHit> unsafe_hit(const Flowpipe& flow, const HPolytope& unsafe) {
  const Vector* previous = nullptr;
  for (std::size_t i = 0; i < flow.segments.size(); ++i) {
    const auto& seg = flow.segments[i];
    if (previous && seg.bounds() == *previous) continue;
    previous = &seg.bounds();
    if (box_misses(seg.box_lower(), seg.box_upper(), unsafe)) continue;
    const HPolytope both = seg.as_polytope().intersected(unsafe);
    if (auto x = both.feasible_point()) return UnsafeHit{i, *x};
  }
  return std::nullopt;
}

}  // namespace stepreach
