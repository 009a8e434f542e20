#pragma once

#include "stepreach/linalg.hpp"

namespace stepreach {

// e^{A t} by scaling and squaring with a diagonal Pade(6,6) approximant.
Matrix mat_exp(const Matrix& A, double t);

// Infinity norm (max absolute row sum).
double inf_norm(const Matrix& A);

}  // namespace stepreach
