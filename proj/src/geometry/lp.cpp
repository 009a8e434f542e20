#include "stepreach/geometry/lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace stepreach::lp {
namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kCostEps = 1e-11;

// Standard form used internally:
//   columns [0,n)      x+
//   columns [n,2n)     x-
//   columns [2n,2n+m)  slacks
//   columns [2n+m, .)  artificials (one per row with negative rhs)
//   last column        right-hand side
// The objective row holds reduced costs of a maximization problem.
struct Tableau {
  int rows = 0;
  int cols = 0;  // including rhs
  int first_artificial = 0;
  std::vector<double> a;  // (rows + 1) x cols, objective row last
  std::vector<int> basis;

  double& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  double* row(int r) { return a.data() + static_cast<size_t>(r) * cols; }
  int rhs() const { return cols - 1; }
};

Tableau& workspace() {
  thread_local Tableau t;
  return t;
}

void pivot(Tableau& t, int pr, int pc) {
  double* prow = t.row(pr);
  const double inv = 1.0 / prow[pc];
  for (int j = 0; j < t.cols; ++j) prow[j] *= inv;
  prow[pc] = 1.0;
  for (int i = 0; i <= t.rows; ++i) {
    if (i == pr) continue;
    double* r = t.row(i);
    const double f = r[pc];
    if (f == 0.0) continue;
    for (int j = 0; j < t.cols; ++j) r[j] -= f * prow[j];
    r[pc] = 0.0;
  }
  t.basis[pr] = pc;
}

// Load objective weights w (maximize w.z) and express them in the current basis.
void load_objective(Tableau& t, const std::vector<double>& w) {
  double* obj = t.row(t.rows);
  for (int j = 0; j < t.cols; ++j) obj[j] = 0.0;
  for (int j = 0; j < t.rhs(); ++j) obj[j] = -w[j];
  for (int i = 0; i < t.rows; ++i) {
    const double wb = w[t.basis[i]];
    if (wb == 0.0) continue;
    const double* r = t.row(i);
    for (int j = 0; j < t.cols; ++j) obj[j] += wb * r[j];
  }
}

enum class Outcome { optimal, unbounded };

Outcome run_simplex(Tableau& t, int allowed_cols) {
  for (;;) {
    double* obj = t.row(t.rows);
    int enter = -1;
    for (int j = 0; j < allowed_cols; ++j) {
      if (obj[j] < -kCostEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return Outcome::optimal;
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < t.rows; ++i) {
      const double aij = t.at(i, enter);
      if (aij <= kPivotEps) continue;
      const double ratio = t.at(i, t.rhs()) / aij;
      if (ratio < best - 1e-14 || (std::abs(ratio - best) <= 1e-14 && t.basis[i] < t.basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) return Outcome::unbounded;
    pivot(t, leave, enter);
  }
}

// Builds the tableau and runs phase one.  Returns false when infeasible.
bool phase_one(Tableau& t, const Matrix& A, const Vector& b) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  int artificials = 0;
  for (int i = 0; i < m; ++i)
    if (b(i) < 0) ++artificials;
  t.rows = m;
  t.first_artificial = 2 * n + m;
  t.cols = 2 * n + m + artificials + 1;
  t.a.assign(static_cast<size_t>(m + 1) * t.cols, 0.0);
  t.basis.assign(m, 0);
  int next_art = t.first_artificial;
  for (int i = 0; i < m; ++i) {
    const double sign = b(i) < 0 ? -1.0 : 1.0;
    double* r = t.row(i);
    for (int j = 0; j < n; ++j) {
      r[j] = sign * A(i, j);
      r[n + j] = -sign * A(i, j);
    }
    r[2 * n + i] = sign;
    r[t.rhs()] = sign * b(i);
    if (sign < 0) {
      r[next_art] = 1.0;
      t.basis[i] = next_art++;
    } else {
      t.basis[i] = 2 * n + i;
    }
  }
  if (artificials == 0) return true;
  std::vector<double> w(t.cols - 1, 0.0);
  for (int j = t.first_artificial; j < t.cols - 1; ++j) w[j] = -1.0;
  load_objective(t, w);
  run_simplex(t, t.cols - 1);
  if (t.at(t.rows, t.rhs()) < -kTolerance) return false;
  // Drive artificials out of the basis; rows without a usable pivot are redundant.
  for (int i = 0; i < t.rows; ++i) {
    if (t.basis[i] < t.first_artificial) continue;
    for (int j = 0; j < t.first_artificial; ++j) {
      if (std::abs(t.at(i, j)) > 1e-9) {
        pivot(t, i, j);
        break;
      }
    }
  }
  return true;
}

Vector extract_x(Tableau& t, int n) {
  Vector x = Vector::Zero(n);
  for (int i = 0; i < t.rows; ++i) {
    const int var = t.basis[i];
    const double v = t.at(i, t.rhs());
    if (var < n)
      x(var) += v;
    else if (var < 2 * n)
      x(var - n) -= v;
  }
  return x;
}

}  // namespace

Result maximize(const Matrix& A, const Vector& b, const Vector& c) {
  const int n = static_cast<int>(c.size());
  Result res;
  Tableau& t = workspace();
  if (!phase_one(t, A, b)) {
    res.status = Status::infeasible;
    return res;
  }
  std::vector<double> w(t.cols - 1, 0.0);
  for (int j = 0; j < n; ++j) {
    w[j] = c(j);
    w[n + j] = -c(j);
  }
  load_objective(t, w);
  if (run_simplex(t, t.first_artificial) == Outcome::unbounded) {
    res.status = Status::unbounded;
    return res;
  }
  res.status = Status::optimal;
  res.x = extract_x(t, n);
  res.value = c.dot(res.x);
  return res;
}

std::optional<Vector> feasible_point(const Matrix& A, const Vector& b) {
  Tableau& t = workspace();
  if (!phase_one(t, A, b)) return std::nullopt;
  return extract_x(t, static_cast<int>(A.cols()));
}

}  // namespace stepreach::lp
