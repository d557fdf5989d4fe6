#include "riviv/covblocks.hpp"

#include <string>

#include "riviv/errors.hpp"
#include "riviv/robust.hpp"

namespace riviv {

namespace {

void check_pair(const RegressionFit& fit_y, const RegressionFit& fit_x,
                const Mat& design, int k, EstimatorKind expected) {
  if (fit_y.method != expected || fit_x.method != expected)
    throw InputError("cov_blocks: fits were produced by a different estimator");
  if (fit_y.residuals.size() != design.rows() ||
      fit_x.residuals.size() != design.rows() ||
      fit_y.coef.size() != design.cols() || fit_x.coef.size() != design.cols())
    throw InputError("cov_blocks: fit dimensions do not match the design");
  if (k < 1 || k > design.cols())
    throw InputError("cov_blocks: invalid instrument count " +
                     std::to_string(k));
}

}  // namespace

CovBlocks cov_blocks_ls(const RegressionFit& fit_y, const RegressionFit& fit_x,
                        const Mat& design, int n_instruments) {
  check_pair(fit_y, fit_x, design, n_instruments, EstimatorKind::LS);
  const auto n = static_cast<double>(design.rows());
  const Mat gram = design.transpose() * design / n;
  const Mat ginv = solve_spd(gram, Mat::Identity(design.cols(), design.cols()));

  const double s_yy = fit_y.residuals.squaredNorm() / n;
  const double s_xx = fit_x.residuals.squaredNorm() / n;
  const double s_yx = fit_y.residuals.dot(fit_x.residuals) / n;

  const int k = n_instruments;
  const Mat gkk = symmetrize(ginv.bottomRightCorner(k, k));
  CovBlocks cov;
  cov.Sdd = gkk * s_yy;
  cov.Spp = gkk * s_xx;
  cov.Sdp = gkk * s_yx;
  cov.Spd = cov.Sdp.transpose();
  return cov;
}

CovBlocks cov_blocks_mallows(const RegressionFit& fit_y,
                             const RegressionFit& fit_x, const Mat& design,
                             int n_instruments, const HuberConfig& cfg) {
  check_pair(fit_y, fit_x, design, n_instruments, EstimatorKind::MallowsHuber);
  const auto n = static_cast<double>(design.rows());
  const Eigen::Index p = design.cols();
  const Vec omega = mallows_weights(design);

  Vec m_w_y(design.rows()), m_w_x(design.rows());
  Vec rho_y(design.rows()), rho_x(design.rows());
  for (Eigen::Index i = 0; i < design.rows(); ++i) {
    const double uy = fit_y.residuals[i] / fit_y.scale;
    const double ux = fit_x.residuals[i] / fit_x.scale;
    m_w_y[i] = omega[i] / fit_y.scale * huber_rho_prime(uy, cfg.cutoff);
    m_w_x[i] = omega[i] / fit_x.scale * huber_rho_prime(ux, cfg.cutoff);
    rho_y[i] = huber_rho(uy, cfg.cutoff);
    rho_x[i] = huber_rho(ux, cfg.cutoff);
  }
  const Vec w2 = omega.array().square();

  const auto weighted_gram = [&](const Vec& w) {
    return Mat(design.transpose() * w.asDiagonal() * design / n);
  };
  const Mat m_y = weighted_gram(m_w_y);
  const Mat m_x = weighted_gram(m_w_x);
  const Mat q_y = weighted_gram(Vec(w2.array() * rho_y.array().square()));
  const Mat q_x = weighted_gram(Vec(w2.array() * rho_x.array().square()));
  const Mat q_yx = weighted_gram(Vec(w2.array() * rho_y.array() * rho_x.array()));

  Mat m_y_inv, m_x_inv;
  try {
    m_y_inv = solve_spd(symmetrize(m_y), Mat::Identity(p, p));
    m_x_inv = solve_spd(symmetrize(m_x), Mat::Identity(p, p));
  } catch (const NotPositiveDefinite&) {
    throw DegenerateSandwich(
        "cov_blocks_mallows: M block singular; every observation was "
        "downweighted to zero on some direction");
  }

  const int k = n_instruments;
  CovBlocks cov;
  cov.Sdd = symmetrize(Mat(m_y_inv * q_y * m_y_inv.transpose()))
                .bottomRightCorner(k, k);
  cov.Spp = symmetrize(Mat(m_x_inv * q_x * m_x_inv.transpose()))
                .bottomRightCorner(k, k);
  cov.Sdp = Mat(m_y_inv * q_yx * m_x_inv.transpose()).bottomRightCorner(k, k);
  cov.Spd = cov.Sdp.transpose();
  return cov;
}

}  // namespace riviv
