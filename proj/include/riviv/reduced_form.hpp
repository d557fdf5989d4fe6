#pragma once

#include "riviv/covblocks.hpp"
#include "riviv/dataset.hpp"
#include "riviv/regression.hpp"

namespace riviv {

/// Both reduced-form equations fitted on the common design, with the
/// instrument-block coefficients and covariance blocks the test statistics
/// are built from. The fit does not depend on any hypothesized beta0, so one
/// ReducedFormFit serves a whole test inversion.
struct ReducedFormFit {
  Vec delta_hat;  // instrument-block coefficients, y equation
  Vec pi_hat;     // instrument-block coefficients, x equation
  CovBlocks cov;
  Eigen::Index n = 0;
  int k = 0;
  EstimatorKind method = EstimatorKind::LS;
  RegressionFit fit_y;
  RegressionFit fit_x;
};

ReducedFormFit fit_reduced_form(const Dataset& data, EstimatorKind method,
                                const HuberConfig& cfg = {});

}  // namespace riviv
