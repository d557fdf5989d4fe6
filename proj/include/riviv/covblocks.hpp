#pragma once

#include "riviv/linalg.hpp"
#include "riviv/regression.hpp"

namespace riviv {

/// Instrument-block asymptotic covariances of sqrt(n) * (coefficient
/// estimation error) for the two reduced-form equations, and their cross
/// terms. All four matrices are k x k, k the instrument count; Spd is Sdp
/// transposed by construction.
struct CovBlocks {
  Mat Sdd;
  Mat Spp;
  Mat Sdp;
  Mat Spd;
};

/// Classical homoskedastic blocks for a pair of LS fits on a shared design:
/// Sdd = (X'X/n)^{-1} * sigma_y^2, Spp with sigma_x^2, cross blocks with the
/// residual cross-moment (1/n) sum r_y r_x, everything then restricted to the
/// trailing k x k instrument sub-block.
CovBlocks cov_blocks_ls(const RegressionFit& fit_y, const RegressionFit& fit_x,
                        const Mat& design, int n_instruments);

/// Influence-function sandwich blocks for a pair of Mallows-Huber fits:
/// M = (1/n) sum (w_i/sigma) rho'(r_i/sigma) x_i x_i',
/// Q = (1/n) sum w_i^2 rho(r_i/sigma)^2 x_i x_i' per equation,
/// Q_cross = (1/n) sum w_i^2 rho(r_y/sigma_y) rho(r_x/sigma_x) x_i x_i',
/// S = M^{-1} Q M^{-T} (cross: M_y^{-1} Q_cross M_x^{-T}), restricted to the
/// instrument sub-block. Throws DegenerateSandwich when an M block is
/// singular (all observations clipped away).
CovBlocks cov_blocks_mallows(const RegressionFit& fit_y,
                             const RegressionFit& fit_x, const Mat& design,
                             int n_instruments, const HuberConfig& cfg = {});

}  // namespace riviv
