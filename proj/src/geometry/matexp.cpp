#include "stepreach/geometry/matexp.hpp"

#include <cmath>
#include <stdexcept>

namespace stepreach {

double inf_norm(const Matrix& A) {
  if (A.size() == 0) return 0.0;
  return A.cwiseAbs().rowwise().sum().maxCoeff();
}

Matrix mat_exp(const Matrix& A, double t) {
  if (A.rows() != A.cols()) throw std::invalid_argument("mat_exp: matrix must be square");
  const Eigen::Index n = A.rows();
  Matrix X = A * t;
  const double norm = inf_norm(X);
  if (norm == 0.0) return Matrix::Identity(n, n);
  if (!std::isfinite(norm)) throw std::invalid_argument("mat_exp: non-finite entries");

  // Scale so that ||X / 2^s|| <= 1/2.
  int s = 0;
  if (norm > 0.5) s = std::max(0, static_cast<int>(std::ceil(std::log2(norm / 0.5))));
  X /= std::ldexp(1.0, s);

  // c_k = (2q-k)! q! / ((2q)! k! (q-k)!) for q = 6.
  constexpr int q = 6;
  double c = 1.0;
  Matrix N = Matrix::Identity(n, n);
  Matrix D = Matrix::Identity(n, n);
  Matrix P = Matrix::Identity(n, n);
  for (int k = 1; k <= q; ++k) {
    c *= static_cast<double>(q - k + 1) / static_cast<double>(k * (2 * q - k + 1));
    P = P * X;
    N += c * P;
    D += ((k % 2 == 0) ? c : -c) * P;
  }
  Matrix E = D.partialPivLu().solve(N);
  for (int i = 0; i < s; ++i) E = E * E;
  return E;
}

}  // namespace stepreach
