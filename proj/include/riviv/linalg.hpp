#pragma once

#include <Eigen/Dense>

namespace riviv {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Solve A X = B for symmetric positive-definite A via Cholesky.
///
/// A pivot falling at or below 1e-12 * trace(A) / dim aborts the
/// factorization with NotPositiveDefinite: in this codebase that means a
/// degenerate covariance (collinear instruments, fully downweighted sample).
/// A is required to be symmetric to within 1e-10 * max|A|.
Mat solve_spd(const Mat& A, const Mat& B);

/// Cholesky factor L (lower) of an SPD matrix, same pivot policy as solve_spd.
Mat cholesky_spd(const Mat& A);

/// (M + M^T) / 2, used to kill rounding asymmetry in covariance expressions.
inline Mat symmetrize(const Mat& M) { return 0.5 * (M + M.transpose()); }

/// True when every entry is finite.
bool all_finite(const Mat& M);

}  // namespace riviv
