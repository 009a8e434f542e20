#include "stepreach/flowpipe.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "stepreach/errors.hpp"
#include "stepreach/geometry/matexp.hpp"

namespace stepreach {

bool axis_aligned(const HPolytope& rows) {
  for (Eigen::Index r = 0; r < rows.A.rows(); ++r) {
    int nz = 0;
    for (Eigen::Index c = 0; c < rows.A.cols(); ++c)
      if (rows.A(r, c) != 0.0) ++nz;
    if (nz != 1) return false;
  }
  return true;
}

TemplatePolyhedron clip(const TemplatePolyhedron& p, const HPolytope& rows) {
  if (p.is_empty()) return p;
  if (rows.rows() == 0) return p;
  if (p.is_box() && axis_aligned(rows)) {
    Vector b = p.bounds();
    for (Eigen::Index r = 0; r < rows.A.rows(); ++r) {
      Eigen::Index i = 0;
      rows.A.row(r).cwiseAbs().maxCoeff(&i);
      const double a = rows.A(r, i);
      const auto axis = static_cast<std::size_t>(i);
      if (a > 0)
        b(static_cast<Eigen::Index>(DirectionSet::upper_index(axis))) =
            std::min(b(static_cast<Eigen::Index>(DirectionSet::upper_index(axis))), rows.b(r) / a);
      else
        b(static_cast<Eigen::Index>(DirectionSet::lower_index(axis))) =
            std::min(b(static_cast<Eigen::Index>(DirectionSet::lower_index(axis))), -rows.b(r) / a);
    }
    for (std::size_t i = 0; i < p.dimension(); ++i) {
      const auto up = static_cast<Eigen::Index>(DirectionSet::upper_index(i));
      const auto lo = static_cast<Eigen::Index>(DirectionSet::lower_index(i));
      const double gap = b(up) + b(lo);  // upper - lower
      if (gap < -kTolerance) return TemplatePolyhedron::empty(p.directions());
      if (gap < 0) {
        const double mid = 0.5 * (b(up) - b(lo));
        b(up) = mid;
        b(lo) = -mid;
      }
    }
    return TemplatePolyhedron(p.directions(), std::move(b));
  }
  {
    // Nothing to cut when the box relaxation already satisfies every row.
    const Vector lo = p.box_lower();
    const Vector hi = p.box_upper();
    bool inside = true;
    for (Eigen::Index r = 0; r < rows.A.rows() && inside; ++r) {
      double most = 0.0;
      for (Eigen::Index i = 0; i < rows.A.cols(); ++i) {
        const double a = rows.A(r, i);
        if (a != 0.0) most += a > 0 ? a * hi(i) : a * lo(i);
      }
      inside = most <= rows.b(r);
    }
    if (inside) return p;
  }
  auto cut = intersect(p, rows);
  if (!cut) return TemplatePolyhedron::empty(p.directions());
  return template_approx(*cut, p.directions());
}

namespace {

using SupportFn = std::function<double(const Vector&)>;

Flowpipe compute(const ComposedLocation& loc, const SupportFn& hX0, const DirectionsPtr& dirs, double dt,
                 double horizon) {
  const std::size_t n = dirs->dimension();
  const std::size_t N = segment_count(dt, horizon);
  const Matrix phi_t = mat_exp(loc.A, dt).transpose();
  const double norm_a = inf_norm(loc.A);
  auto hU = [&](const Vector& l) { return box_support(loc.u_lower, loc.u_upper, l); };

  double r_x0 = 0.0;
  double r_u = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vector e = Vector::Unit(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(i));
    r_x0 = std::max({r_x0, std::abs(hX0(e)), std::abs(hX0(-e))});
    r_u = std::max({r_u, std::abs(hU(e)), std::abs(hU(-e))});
  }
  double alpha = 0.0;
  double beta = 0.0;
  if (norm_a >= 1e-12) {
    const double grow = std::expm1(dt * norm_a) - dt * norm_a;
    alpha = grow * (r_x0 + r_u / norm_a);
    beta = grow * (r_u / norm_a);
  }

  const std::size_t d = dirs->size();
  // bounds[i][dir], filled direction by direction.
  std::vector<Vector> bounds(N, Vector(static_cast<Eigen::Index>(d)));
  for (std::size_t k = 0; k < d; ++k) {
    Vector r = dirs->direction(k);
    Vector next = phi_t * r;
    double h_r = hX0(r);
    double h_next = (next == r) ? h_r : hX0(next);
    double acc = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double l1 = r.lpNorm<1>();
      const double hu = dt * hU(r);
      const double omega0 = std::max(h_r, h_next + hu + alpha * l1);
      bounds[i](static_cast<Eigen::Index>(k)) = omega0 + acc;
      acc += hu + beta * l1;
      if (i + 1 < N) {
        Vector after = phi_t * next;
        const double h_after = (after == next) ? h_next : hX0(after);
        r = std::move(next);
        next = std::move(after);
        h_r = h_next;
        h_next = h_after;
      }
    }
  }

  Flowpipe fp;
  fp.segments.reserve(N);
  for (std::size_t i = 0; i < N; ++i) {
    TemplatePolyhedron seg = clip(TemplatePolyhedron(dirs, std::move(bounds[i])), loc.invariant);
    if (seg.is_empty()) {
      fp.truncated_at = i;
      break;
    }
    fp.segments.push_back(std::move(seg));
  }
  return fp;
}

}  // namespace

Flowpipe postC(const ComposedLocation& loc, const TemplatePolyhedron& X0, double time_step, double time_horizon) {
  const TemplatePolyhedron start = clip(X0, loc.invariant);
  if (start.is_empty()) throw EmptyInitialError("postC: initial set misses the invariant");
  return compute(loc, [&](const Vector& l) { return start.support(l); }, X0.directions(), time_step,
                 time_horizon);
}

Flowpipe postC(const ComposedLocation& loc, const SupportSet& X0, const DirectionsPtr& dirs, double time_step,
               double time_horizon) {
  const TemplatePolyhedron start = clip(template_approx(X0, dirs), loc.invariant);
  if (start.is_empty()) throw EmptyInitialError("postC: initial set misses the invariant");
  return compute(loc, [&](const Vector& l) { return X0.support(l); }, dirs, time_step, time_horizon);
}

void write_flowpipe_csv(std::ostream& out, const Flowpipe& fp) {
  if (fp.segments.empty()) return;
  const auto& dirs = fp.segments.front().directions();
  out << "segment_index,direction_index";
  for (std::size_t i = 0; i < dirs->dimension(); ++i) out << ",l" << i;
  out << ",bound\n";
  out.precision(17);
  for (std::size_t s = 0; s < fp.segments.size(); ++s) {
    const Vector& b = fp.segments[s].bounds();
    for (std::size_t k = 0; k < dirs->size(); ++k) {
      out << s << ',' << k;
      for (std::size_t i = 0; i < dirs->dimension(); ++i)
        out << ',' << dirs->matrix()(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i));
      out << ',' << b(static_cast<Eigen::Index>(k)) << '\n';
    }
  }
}

}  // namespace stepreach
