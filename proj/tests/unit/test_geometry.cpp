#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "stepreach/errors.hpp"
#include "stepreach/geometry/lp.hpp"
#include "stepreach/geometry/matexp.hpp"
#include "stepreach/geometry/support_set.hpp"
#include "stepreach/geometry/template_polyhedron.hpp"

using namespace stepreach;

namespace {

// Random bounded polytope: a box with extra random cuts through it.
HPolytope random_polytope(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int extra = 1 + static_cast<int>(rng() % 4);
  Matrix A(2 * n + extra, n);
  Vector b(2 * n + extra);
  for (int i = 0; i < n; ++i) {
    A.row(2 * i) = Vector::Unit(n, i).transpose();
    A.row(2 * i + 1) = -Vector::Unit(n, i).transpose();
    b(2 * i) = 1.0 + std::abs(u(rng));
    b(2 * i + 1) = 1.0 + std::abs(u(rng));
  }
  for (int r = 0; r < extra; ++r) {
    Vector a(n);
    for (int i = 0; i < n; ++i) a(i) = u(rng);
    A.row(2 * n + r) = a.transpose();
    b(2 * n + r) = 0.3 + std::abs(u(rng));
  }
  return HPolytope(A, b);
}

Vector random_dir(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Vector l(n);
  for (int i = 0; i < n; ++i) l(i) = g(rng);
  return l;
}

}  // namespace

TEST_CASE("polytope support matches the vertex oracle") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const HPolytope p = random_polytope(rng, n);
    const auto V = oracle::vertices(p);
    REQUIRE(!V.empty());
    for (int k = 0; k < 5; ++k) {
      const Vector l = random_dir(rng, n);
      CHECK(p.support(l) == doctest::Approx(oracle::max_over(V, l)).epsilon(1e-9));
    }
  }
}

TEST_CASE("lp statuses") {
  Matrix A(2, 1);
  A << 1, -1;
  Vector b(2);
  b << 1, -2;  // x <= 1 and x >= 2
  CHECK(lp::maximize(A, b, Vector::Ones(1)).status == lp::Status::infeasible);
  Matrix B(1, 1);
  B << 1;
  Vector c(1);
  c << 1;
  CHECK(lp::maximize(B, c, -Vector::Ones(1)).status == lp::Status::unbounded);
  const auto r = lp::maximize(B, c, Vector::Ones(1));
  CHECK(r.status == lp::Status::optimal);
  CHECK(r.value == doctest::Approx(1.0));
  const HPolytope half(B, c);
  CHECK_THROWS_AS(half.support(-Vector::Ones(1)), UnboundedError);
  CHECK_THROWS_AS(HPolytope(A, b).support(Vector::Ones(1)), EmptySetError);
}

TEST_CASE("support calculus of set operations") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 40; ++t) {
    const int n = 2;
    const HPolytope P = random_polytope(rng, n);
    const HPolytope Q = random_polytope(rng, n);
    const auto VP = oracle::vertices(P);
    const auto VQ = oracle::vertices(Q);
    Matrix M(n, n);
    for (int i = 0; i < n * n; ++i) M(i) = u(rng);
    Vector off(n);
    off << u(rng), u(rng);
    const SupportSet sp = SupportSet::polytope(P);
    const SupportSet sq = SupportSet::polytope(Q);
    const SupportSet img = SupportSet::affine_map(M, sp, off);
    const SupportSet sum = SupportSet::minkowski_sum(sp, sq);
    const SupportSet hull = SupportSet::convex_hull(sp, sq);
    for (int k = 0; k < 5; ++k) {
      const Vector l = random_dir(rng, n);
      double best_img = -INFINITY;
      for (const auto& v : VP) best_img = std::max(best_img, l.dot(M * v + off));
      CHECK(img.support(l) == doctest::Approx(best_img).epsilon(1e-9));
      CHECK(sum.support(l) == doctest::Approx(oracle::max_over(VP, l) + oracle::max_over(VQ, l)).epsilon(1e-9));
      CHECK(hull.support(l) ==
            doctest::Approx(std::max(oracle::max_over(VP, l), oracle::max_over(VQ, l))).epsilon(1e-9));
    }
  }
}

TEST_CASE("box and ball supports") {
  Vector lo(2), hi(2), l(2);
  lo << -1, 2;
  hi << 3, 5;
  l << -2, 1;
  CHECK(SupportSet::box(lo, hi).support(l) == doctest::Approx(2 + 5));
  CHECK(box_support(lo, hi, l) == doctest::Approx(7));
  CHECK(SupportSet::ball(2, 0.5).support(l) == doctest::Approx(1.5));
}

TEST_CASE("template approximation and hull") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 30; ++t) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const auto dirs = DirectionSet::get(t % 2 ? DirectionFamily::oct : DirectionFamily::box, static_cast<std::size_t>(n));
    std::vector<TemplatePolyhedron> parts;
    for (int k = 0; k < 3; ++k) parts.push_back(template_approx(random_polytope(rng, n), dirs));
    const TemplatePolyhedron h = template_hull(parts);
    for (std::size_t i = 0; i < dirs->size(); ++i) {
      double m = -INFINITY;
      for (const auto& p : parts) m = std::max(m, p.bounds()(static_cast<Eigen::Index>(i)));
      CHECK(h.bounds()(static_cast<Eigen::Index>(i)) == m);
    }
    for (const auto& p : parts)
      for (std::size_t i = 0; i < dirs->size(); ++i) {
        const Vector l = dirs->direction(i);
        CHECK(p.support(l) <= p.bounds()(static_cast<Eigen::Index>(i)) + 1e-9);
      }
  }
  const auto dirs = DirectionSet::get(DirectionFamily::box, 1);
  std::vector<TemplatePolyhedron> none{TemplatePolyhedron::empty(dirs)};
  CHECK_THROWS_AS(template_hull(none), EmptySetError);
}

TEST_CASE("direction families") {
  CHECK(DirectionSet::get(DirectionFamily::box, 3)->size() == 6);
  CHECK(DirectionSet::get(DirectionFamily::oct, 3)->size() == 18);
  CHECK(DirectionSet::get(DirectionFamily::box, 3) == DirectionSet::get(DirectionFamily::box, 3));
}

TEST_CASE("matrix exponential identities") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 30; ++t) {
    const int n = 1 + static_cast<int>(rng() % 4);
    Matrix A(n, n);
    for (int i = 0; i < n * n; ++i) A(i) = u(rng);
    CHECK((mat_exp(A, 0.0) - Matrix::Identity(n, n)).norm() < 1e-14);
    const Matrix prod = mat_exp(A, 0.3) * mat_exp(A, 0.7);
    CHECK((prod - mat_exp(A, 1.0)).lpNorm<Eigen::Infinity>() < 1e-9 * std::max(1.0, prod.lpNorm<Eigen::Infinity>()));
    const Matrix inv = mat_exp(A, 0.5) * mat_exp(A, -0.5);
    CHECK((inv - Matrix::Identity(n, n)).lpNorm<Eigen::Infinity>() < 1e-9);
    CHECK((mat_exp(A, 1.0) - oracle::taylor_exp(A, 1.0)).lpNorm<Eigen::Infinity>() < 1e-9);
  }
  Matrix D = Matrix::Zero(2, 2);
  D(0, 0) = 1;
  D(1, 1) = -2;
  const Matrix E = mat_exp(D, 1.0);
  CHECK(E(0, 0) == doctest::Approx(std::exp(1.0)));
  CHECK(E(1, 1) == doctest::Approx(std::exp(-2.0)));
}
