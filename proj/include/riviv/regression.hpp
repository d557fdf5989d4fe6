#pragma once

#include "riviv/linalg.hpp"

namespace riviv {

enum class EstimatorKind { LS, MallowsHuber };

enum class ScaleUpdate { PerIteration, FixedFromInitial };

struct HuberConfig {
  double cutoff = 1.345;
  int max_iter = 50;
  double tol = 1e-8;
  ScaleUpdate scale_update = ScaleUpdate::PerIteration;
};

/// One fitted regression equation. Coefficients are ordered controls first,
/// instruments last, matching the design the fit was run on.
struct RegressionFit {
  Vec coef;
  Vec residuals;
  double scale = 0.0;  // sigma-hat of the equation error
  EstimatorKind method = EstimatorKind::LS;
  int iterations = 0;
  bool converged = true;
};

/// Leverage-based Mallows weights: entry i is sqrt(1 - h_ii) for the design's
/// hat-matrix diagonal h. Weights lie in [0, 1] and sum(1 - w^2) equals the
/// number of columns. Throws RankDeficient for a rank-deficient design.
Vec mallows_weights(const Mat& design);

/// Least squares. scale is sqrt(mean squared residual), divisor n.
RegressionFit fit_ls(const Vec& response, const Mat& design);

/// Mallows-type Huber M-estimation by iteratively reweighted least squares.
///
/// Solves (1/n) sum_i w(x_i) rho{(y_i - x_i'b) / sigma} x_i = 0 with w the
/// Mallows leverage weights and rho the clipped identity at cfg.cutoff.
/// Starts from LS, scale = mad(residuals) / 0.6745, IRLS weight per
/// observation w(x_i) * rho(r/sigma) / (r/sigma) (-> w(x_i) as r -> 0), scale
/// recomputed per cfg.scale_update. Iterates until the coefficient change
/// drops below cfg.tol and the estimating equation holds to
/// cfg.tol / sqrt(n) in the max norm; converged reports whether that was
/// reached within cfg.max_iter sweeps (the last iterate is returned either
/// way). Throws ZeroScale when the residual MAD vanishes.
RegressionFit fit_mallows_huber(const Vec& response, const Mat& design,
                                const HuberConfig& cfg = {});

/// Max-norm of the Mallows-Huber estimating equation at a candidate fit;
/// exposed for tests and diagnostics.
double mallows_estimating_eq_norm(const Vec& response, const Mat& design,
                                  const Vec& coef, double sigma,
                                  const Vec& weights, double cutoff);

}  // namespace riviv
