#include "riviv/regression.hpp"

#include <cmath>
#include <string>

#include "riviv/errors.hpp"
#include "riviv/robust.hpp"

namespace riviv {

namespace {

constexpr double kMadToSigma = 1.0 / 0.6745;

void check_shape(const Vec& response, const Mat& design) {
  if (design.rows() != response.size())
    throw InputError("regression: response length " +
                     std::to_string(response.size()) +
                     " does not match design rows " +
                     std::to_string(design.rows()));
  if (design.rows() <= design.cols())
    throw InputError("regression: need more observations than columns (n=" +
                     std::to_string(design.rows()) + ", cols=" +
                     std::to_string(design.cols()) + ")");
  if (!design.allFinite() || !response.allFinite())
    throw InputError("regression: non-finite values in the data");
}

// Original index of the column sitting at the first non-pivoted position of
// a rank-revealing QR: the one most nearly dependent on the others.
int weakest_column(const Eigen::ColPivHouseholderQR<Mat>& qr) {
  const auto& perm = qr.colsPermutation().indices();
  for (int i = 0; i < perm.size(); ++i)
    if (perm(i) == qr.rank()) return i;
  return -1;
}

void throw_rank_deficient(const Eigen::ColPivHouseholderQR<Mat>& qr,
                          Eigen::Index cols) {
  const int column = weakest_column(qr);
  throw RankDeficient("regression: design is rank deficient (rank " +
                          std::to_string(qr.rank()) + " of " +
                          std::to_string(cols) + "; design column " +
                          std::to_string(column) +
                          " is collinear with the others)",
                      column);
}

Vec solve_weighted_ls(const Vec& response, const Mat& design,
                      const Vec& sqrt_w) {
  const Mat xw = sqrt_w.asDiagonal() * design;
  const Vec yw = sqrt_w.asDiagonal() * response;
  Eigen::ColPivHouseholderQR<Mat> qr(xw);
  if (qr.rank() < design.cols()) throw_rank_deficient(qr, design.cols());
  return qr.solve(yw);
}

}  // namespace

Vec mallows_weights(const Mat& design) {
  Mat gram = design.transpose() * design;
  Mat l;
  try {
    l = cholesky_spd(gram);
  } catch (const NotPositiveDefinite&) {
    Eigen::ColPivHouseholderQR<Mat> qr(design);
    if (qr.rank() < design.cols()) throw_rank_deficient(qr, design.cols());
    throw RankDeficient("mallows_weights: design is rank deficient");
  }
  // h_ii = || L^{-1} x_i ||^2
  const Mat v = l.triangularView<Eigen::Lower>().solve(design.transpose());
  Vec w(design.rows());
  for (Eigen::Index i = 0; i < design.rows(); ++i) {
    const double h = v.col(i).squaredNorm();
    w[i] = std::sqrt(std::max(0.0, 1.0 - h));
  }
  return w;
}

RegressionFit fit_ls(const Vec& response, const Mat& design) {
  check_shape(response, design);
  Eigen::ColPivHouseholderQR<Mat> qr(design);
  if (qr.rank() < design.cols()) throw_rank_deficient(qr, design.cols());
  RegressionFit fit;
  fit.method = EstimatorKind::LS;
  fit.coef = qr.solve(response);
  fit.residuals = response - design * fit.coef;
  fit.scale = std::sqrt(fit.residuals.squaredNorm() /
                        static_cast<double>(response.size()));
  return fit;
}

double mallows_estimating_eq_norm(const Vec& response, const Mat& design,
                                  const Vec& coef, double sigma,
                                  const Vec& weights, double cutoff) {
  const Vec resid = response - design * coef;
  Vec score(resid.size());
  for (Eigen::Index i = 0; i < resid.size(); ++i)
    score[i] = weights[i] * huber_rho(resid[i] / sigma, cutoff);
  const Vec eq = design.transpose() * score / static_cast<double>(resid.size());
  return eq.cwiseAbs().maxCoeff();
}

RegressionFit fit_mallows_huber(const Vec& response, const Mat& design,
                                const HuberConfig& cfg) {
  check_shape(response, design);
  const auto n = static_cast<double>(response.size());
  const Vec omega = mallows_weights(design);

  RegressionFit fit = fit_ls(response, design);
  fit.method = EstimatorKind::MallowsHuber;

  // Residual MAD at or below rounding noise relative to the response spread
  // is a degenerate response.
  const double scale_floor = 1e-12 * std::max(1.0, mad(response));
  const auto robust_sigma = [&](const Vec& resid) {
    const double s = mad(resid) * kMadToSigma;
    if (s <= scale_floor)
      throw ZeroScale("fit_mallows_huber: residual MAD is zero");
    return s;
  };
  double sigma = robust_sigma(fit.residuals);

  const double ee_tol = cfg.tol / std::sqrt(n);
  Vec sqrt_w(response.size());
  bool converged = false;
  int iter = 0;
  for (; iter < cfg.max_iter; ++iter) {
    for (Eigen::Index i = 0; i < response.size(); ++i) {
      const double u = std::fabs(fit.residuals[i]) / sigma;
      const double psi_w = (u <= cfg.cutoff) ? 1.0 : cfg.cutoff / u;
      sqrt_w[i] = std::sqrt(omega[i] * psi_w);
    }
    const Vec coef_new = solve_weighted_ls(response, design, sqrt_w);
    const double delta = (coef_new - fit.coef).cwiseAbs().maxCoeff();
    fit.coef = coef_new;
    fit.residuals = response - design * fit.coef;
    if (cfg.scale_update == ScaleUpdate::PerIteration)
      sigma = robust_sigma(fit.residuals);
    if (delta < cfg.tol &&
        mallows_estimating_eq_norm(response, design, fit.coef, sigma, omega,
                                   cfg.cutoff) <= ee_tol) {
      converged = true;
      ++iter;
      break;
    }
  }
  fit.scale = sigma;
  fit.iterations = iter;
  fit.converged = converged;
  return fit;
}

}  // namespace riviv
