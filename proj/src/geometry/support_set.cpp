#include "stepreach/geometry/support_set.hpp"

#include <algorithm>
#include <stdexcept>
#include <variant>

#include "stepreach/errors.hpp"
#include "stepreach/geometry/template_polyhedron.hpp"

namespace stepreach {

struct PolytopeAtom {
  HPolytope p;
};
struct BoxAtom {
  Vector lo, hi;
};
struct BallAtom {
  std::size_t dim;
  double radius;
};
struct AffineNode {
  Matrix M;
  Vector offset;  // empty when absent
  std::shared_ptr<const SupportSet::Node> child;
};
struct SumNode {
  std::shared_ptr<const SupportSet::Node> a, b;
};
struct HullNode {
  std::shared_ptr<const SupportSet::Node> a, b;
};

struct SupportSet::Node {
  std::variant<PolytopeAtom, BoxAtom, BallAtom, AffineNode, SumNode, HullNode> v;
  std::size_t dim = 0;
};

namespace {

double eval(const SupportSet::Node& n, const Vector& l) {
  return std::visit(
      [&](const auto& x) -> double {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, PolytopeAtom>) {
          return x.p.support(l);
        } else if constexpr (std::is_same_v<T, BoxAtom>) {
          return box_support(x.lo, x.hi, l);
        } else if constexpr (std::is_same_v<T, BallAtom>) {
          return x.radius * l.lpNorm<1>();
        } else if constexpr (std::is_same_v<T, AffineNode>) {
          double v = eval(*x.child, x.M.transpose() * l);
          if (x.offset.size() > 0) v += x.offset.dot(l);
          return v;
        } else if constexpr (std::is_same_v<T, SumNode>) {
          return eval(*x.a, l) + eval(*x.b, l);
        } else {
          return std::max(eval(*x.a, l), eval(*x.b, l));
        }
      },
      n.v);
}

void require_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace

SupportSet SupportSet::polytope(HPolytope p) {
  if (p.is_empty()) throw EmptySetError("polytope atom is empty");
  const auto n = static_cast<Eigen::Index>(p.dimension());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (double s : {1.0, -1.0}) {
      Vector e = Vector::Zero(n);
      e(i) = s;
      if (!p.support_or_unbounded(e)) throw UnboundedError("polytope atom is unbounded");
    }
  }
  auto node = std::make_shared<Node>();
  node->dim = p.dimension();
  node->v = PolytopeAtom{std::move(p)};
  return SupportSet(std::move(node));
}

SupportSet SupportSet::box(Vector lower, Vector upper) {
  require_dim(lower.size(), upper.size(), "box");
  for (Eigen::Index i = 0; i < lower.size(); ++i)
    if (lower(i) > upper(i)) throw EmptySetError("box atom has lower > upper");
  auto node = std::make_shared<Node>();
  node->dim = static_cast<std::size_t>(lower.size());
  node->v = BoxAtom{std::move(lower), std::move(upper)};
  return SupportSet(std::move(node));
}

SupportSet SupportSet::ball(std::size_t dim, double radius) {
  if (radius < 0) throw EmptySetError("ball with negative radius");
  auto node = std::make_shared<Node>();
  node->dim = dim;
  node->v = BallAtom{dim, radius};
  return SupportSet(std::move(node));
}

SupportSet SupportSet::from_template(const TemplatePolyhedron& t) {
  if (t.is_empty()) throw EmptySetError("empty template polyhedron");
  if (t.is_box()) return box(t.box_lower(), t.box_upper());
  auto node = std::make_shared<Node>();
  node->dim = t.dimension();
  node->v = PolytopeAtom{t.as_polytope()};
  return SupportSet(std::move(node));
}

SupportSet SupportSet::affine_map(Matrix M, const SupportSet& s, std::optional<Vector> offset) {
  require_dim(static_cast<std::size_t>(M.cols()), s.dimension(), "affine_map");
  if (offset) require_dim(static_cast<std::size_t>(offset->size()), static_cast<std::size_t>(M.rows()), "affine_map");
  auto node = std::make_shared<Node>();
  node->dim = static_cast<std::size_t>(M.rows());
  node->v = AffineNode{std::move(M), offset ? std::move(*offset) : Vector(), s.node_};
  return SupportSet(std::move(node));
}

SupportSet SupportSet::minkowski_sum(const SupportSet& a, const SupportSet& b) {
  require_dim(a.dimension(), b.dimension(), "minkowski_sum");
  auto node = std::make_shared<Node>();
  node->dim = a.dimension();
  node->v = SumNode{a.node_, b.node_};
  return SupportSet(std::move(node));
}

SupportSet SupportSet::convex_hull(const SupportSet& a, const SupportSet& b) {
  require_dim(a.dimension(), b.dimension(), "convex_hull");
  auto node = std::make_shared<Node>();
  node->dim = a.dimension();
  node->v = HullNode{a.node_, b.node_};
  return SupportSet(std::move(node));
}

std::size_t SupportSet::dimension() const { return node_->dim; }

double SupportSet::support(const Vector& l) const {
  require_dim(static_cast<std::size_t>(l.size()), dimension(), "support");
  return eval(*node_, l);
}

}  // namespace stepreach
