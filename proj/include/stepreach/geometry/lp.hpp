#pragma once

#include <optional>

#include "stepreach/linalg.hpp"

namespace stepreach::lp {

enum class Status { optimal, infeasible, unbounded };

struct Result {
  Status status = Status::infeasible;
  double value = 0.0;
  Vector x;  // maximizer when optimal
};

// maximize c.x subject to A x <= b with x free.  Dense two-phase tableau
// simplex using Bland's rule.
Result maximize(const Matrix& A, const Vector& b, const Vector& c);

// A point with A x <= b (up to kTolerance), or nullopt when the system is
// infeasible.
std::optional<Vector> feasible_point(const Matrix& A, const Vector& b);

inline bool is_feasible(const Matrix& A, const Vector& b) { return feasible_point(A, b).has_value(); }

}  // namespace stepreach::lp
