#include "riviv/linalg.hpp"

#include <cmath>
#include <string>

#include "riviv/errors.hpp"

namespace riviv {

bool all_finite(const Mat& M) { return M.allFinite(); }

Mat cholesky_spd(const Mat& A) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n) throw InputError("cholesky_spd: matrix is not square");
  const double scale = A.cwiseAbs().maxCoeff();
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(scale, 1.0))
    throw InputError("cholesky_spd: matrix is not symmetric");

  const double pivot_floor = 1e-12 * A.trace() / static_cast<double>(n);

  Mat L = Mat::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double d = A(j, j) - L.row(j).head(j).squaredNorm();
    if (d <= pivot_floor)
      throw NotPositiveDefinite("cholesky_spd: pivot " + std::to_string(d) +
                                " at column " + std::to_string(j) +
                                " below floor " + std::to_string(pivot_floor));
    d = std::sqrt(d);
    L(j, j) = d;
    for (Eigen::Index i = j + 1; i < n; ++i)
      L(i, j) = (A(i, j) - L.row(i).head(j).dot(L.row(j).head(j))) / d;
  }
  return L;
}

Mat solve_spd(const Mat& A, const Mat& B) {
  if (A.rows() != B.rows())
    throw InputError("solve_spd: dimension mismatch between A and B");
  const Mat L = cholesky_spd(A);
  Mat X = L.triangularView<Eigen::Lower>().solve(B);
  L.transpose().triangularView<Eigen::Upper>().solveInPlace(X);
  return X;
}

}  // namespace riviv
