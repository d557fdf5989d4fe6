#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "oracles.hpp"
#include "riviv/covblocks.hpp"
#include "riviv/errors.hpp"
#include "riviv/regression.hpp"
#include "riviv/robust.hpp"
#include "riviv/sensitivity.hpp"
#include "riviv/simulation.hpp"

using riviv::EstimatorKind;
using riviv::Mat;
using riviv::Vec;

TEST_CASE("huber_rho clips, huber_rho_prime is its indicator") {
  CHECK(riviv::huber_rho(0.0, 1.345) == 0.0);
  CHECK(riviv::huber_rho(2.0, 1.345) == 1.345);
  CHECK(riviv::huber_rho(-0.5, 1.345) == -0.5);
  CHECK(riviv::huber_rho(-3.0, 1.345) == -1.345);
  CHECK(riviv::huber_rho_prime(1.0, 1.345) == 1.0);
  CHECK(riviv::huber_rho_prime(1.345, 1.345) == 1.0);  // boundary counts as inside
  CHECK(riviv::huber_rho_prime(1.346, 1.345) == 0.0);
}

TEST_CASE("mallows_weights on balanced and duplicated designs") {
  const int n = 12;
  const Mat ones = Mat::Ones(n, 1);
  const Vec w = riviv::mallows_weights(ones);
  for (int i = 0; i < n; ++i)
    CHECK(w[i] == doctest::Approx(std::sqrt(1.0 - 1.0 / n)).epsilon(1e-12));

  // Duplicating a row splits its leverage, so its weight strictly increases.
  Mat design(3, 1);
  design << 4.0, 1.0, 0.5;
  const Vec w3 = riviv::mallows_weights(design);
  Mat dup(4, 1);
  dup << 4.0, 4.0, 1.0, 0.5;
  const Vec w4 = riviv::mallows_weights(dup);
  CHECK(w4[0] > w3[0]);

  riviv::RngStream rng(5, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const Mat x = oracle::random_matrix(rng, 30, 4);
    const Vec wr = riviv::mallows_weights(x);
    double hat_trace = 0.0;
    for (int i = 0; i < 30; ++i) {
      CHECK(wr[i] >= 0.0);
      CHECK(wr[i] <= 1.0);
      hat_trace += 1.0 - wr[i] * wr[i];
    }
    CHECK(hat_trace == doctest::Approx(4.0).epsilon(1e-8));
  }

  Mat singular(5, 2);
  singular.col(0).setOnes();
  singular.col(1).setOnes();
  CHECK_THROWS_AS(riviv::mallows_weights(singular), riviv::RankDeficient);
}

TEST_CASE("fit_ls basics and the normal-equation oracle") {
  riviv::RngStream rng(101, 0);
  const Mat x = oracle::random_matrix(rng, 40, 3);
  const Vec beta = (Vec(3) << 1.0, -2.0, 0.5).finished();
  const Vec y_exact = x * beta;
  const auto fit = riviv::fit_ls(y_exact, x);
  CHECK(fit.residuals.cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((fit.coef - beta).cwiseAbs().maxCoeff() <= 1e-10);

  const Vec z = oracle::random_vector(rng, 25);
  const Vec y1 = oracle::random_vector(rng, 25);
  const auto fit1 = riviv::fit_ls(y1, z);
  CHECK(fit1.coef[0] == doctest::Approx(z.dot(y1) / z.squaredNorm())
                            .epsilon(1e-12));

  const Mat x2 = oracle::random_matrix(rng, 50, 3);
  const Vec y2 = oracle::random_vector(rng, 50);
  const auto fit2 = riviv::fit_ls(y2, x2);
  const Vec coef_oracle = oracle::ls_normal_equations(y2, x2);
  CHECK((fit2.coef - coef_oracle).cwiseAbs().maxCoeff() <= 1e-8);
  // Normal equations hold.
  CHECK((x2.transpose() * fit2.residuals).cwiseAbs().maxCoeff() <= 1e-8);
  // Divisor-n scale.
  CHECK(fit2.scale ==
        doctest::Approx(std::sqrt(fit2.residuals.squaredNorm() / 50.0)));

  Mat rank_def(10, 2);
  rank_def.col(0) = oracle::random_vector(rng, 10);
  rank_def.col(1) = 2.0 * rank_def.col(0);
  CHECK_THROWS_AS(riviv::fit_ls(oracle::random_vector(rng, 10), rank_def),
                  riviv::RankDeficient);
}

namespace {

// Balanced +-1 design with constant leverage plus a residual pattern that is
// orthogonal to the columns and stays strictly inside the Huber cutoff after
// MAD standardization.
struct ConstantLeverageData {
  Mat design;
  Vec y;
  Vec coef;
};

ConstantLeverageData constant_leverage_data() {
  ConstantLeverageData d;
  d.design.resize(16, 2);
  Vec r(16);
  const double signs[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  const double resid_pattern[4] = {0.5, -0.5, 1.0, -1.0};
  for (int g = 0; g < 4; ++g)
    for (int j = 0; j < 4; ++j) {
      d.design(4 * g + j, 0) = signs[g][0];
      d.design(4 * g + j, 1) = signs[g][1];
      r[4 * g + j] = resid_pattern[j];
    }
  d.coef = (Vec(2) << 1.0, 2.0).finished();
  d.y = d.design * d.coef + r;
  return d;
}

}  // namespace

TEST_CASE("fit_mallows_huber equals LS under constant leverage inside the cutoff") {
  const auto d = constant_leverage_data();
  // The construction must keep every standardized residual inside the cutoff.
  const auto ls = riviv::fit_ls(d.y, d.design);
  const double sigma = riviv::mad(ls.residuals) / 0.6745;
  CHECK(ls.residuals.cwiseAbs().maxCoeff() / sigma < 1.345);

  const auto m = riviv::fit_mallows_huber(d.y, d.design);
  CHECK(m.converged);
  CHECK((m.coef - ls.coef).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("fit_mallows_huber matches LS on clean low-leverage data to 1e-4") {
  riviv::ScenarioConfig cfg;
  cfg.contamination = riviv::Contamination::None;
  riviv::RngStream rng(7, 3);
  const riviv::Dataset ds = riviv::generate_baseline(cfg, rng);
  const Mat design = ds.design();
  const auto ls = riviv::fit_ls(ds.y, design);
  const auto m = riviv::fit_mallows_huber(ds.y, design);
  CHECK(m.converged);
  // Gaussian draws clip some residuals, so the two estimators differ by a
  // fraction of the coefficient sampling noise (~1/sqrt(n)), not by 1e-4;
  // the exact no-clipping agreement is covered by the constant-leverage case.
  CHECK((m.coef - ls.coef).cwiseAbs().maxCoeff() <= 0.05);
}

TEST_CASE("fit_mallows_huber satisfies its estimating equation") {
  riviv::ScenarioConfig cfg;
  riviv::RngStream rng(19, 11);
  const riviv::Dataset ds = riviv::generate_scenario(cfg, rng);
  const Mat design = ds.design();
  riviv::HuberConfig hc;
  const auto fit = riviv::fit_mallows_huber(ds.y, design, hc);
  CHECK(fit.converged);
  const Vec omega = riviv::mallows_weights(design);
  const double ee = riviv::mallows_estimating_eq_norm(
      ds.y, design, fit.coef, fit.scale, omega, hc.cutoff);
  CHECK(ee <= hc.tol / std::sqrt(static_cast<double>(ds.n())));
}

TEST_CASE("single outlier moves the LS fit but barely the Mallows fit") {
  riviv::ScenarioConfig cfg;  // section-4 baseline, n = 250, pi = 1, beta = 0
  riviv::RngStream rng(99, 0);
  const riviv::Dataset clean = riviv::generate_baseline(cfg, rng);
  riviv::Dataset dirty = clean;
  dirty.y[0] = 20.0;
  const Mat design = clean.design();
  const int k = clean.k();

  const auto ls_clean = riviv::fit_ls(clean.y, design);
  const auto ls_dirty = riviv::fit_ls(dirty.y, design);
  const auto m_clean = riviv::fit_mallows_huber(clean.y, design);
  const auto m_dirty = riviv::fit_mallows_huber(dirty.y, design);

  const double mc_se = 1.0 / std::sqrt(250.0);
  const double m_shift =
      (m_dirty.coef.tail(k) - m_clean.coef.tail(k)).cwiseAbs().maxCoeff();
  CHECK(m_shift <= 3.0 * mc_se);

  // LS shift follows the exact rank-one update (X'X)^{-1} x_1 * dy.
  const Vec x1 = design.row(0).transpose();
  const Vec predicted = (design.transpose() * design).inverse() * x1 *
                        (dirty.y[0] - clean.y[0]);
  CHECK((ls_dirty.coef - ls_clean.coef - predicted).cwiseAbs().maxCoeff() <=
        1e-8);
  const double ls_shift =
      (ls_dirty.coef.tail(k) - ls_clean.coef.tail(k)).cwiseAbs().maxCoeff();
  CHECK(ls_shift > m_shift);
}

TEST_CASE("fixed-from-initial scale mode freezes the first robust scale") {
  riviv::ScenarioConfig cfg;
  cfg.n = 120;
  riviv::RngStream rng(44, 9);
  riviv::Dataset ds = riviv::generate_baseline(cfg, rng);
  ds.y[1] = -15.0;
  const Mat design = ds.design();

  riviv::HuberConfig fixed;
  fixed.scale_update = riviv::ScaleUpdate::FixedFromInitial;
  const auto fit_fixed = riviv::fit_mallows_huber(ds.y, design, fixed);
  const auto ls = riviv::fit_ls(ds.y, design);
  CHECK(fit_fixed.scale ==
        doctest::Approx(riviv::mad(ls.residuals) / 0.6745).epsilon(1e-12));

  const auto fit_iter = riviv::fit_mallows_huber(ds.y, design);
  CHECK(fit_iter.scale != fit_fixed.scale);
  CHECK(fit_fixed.converged);
  CHECK(fit_iter.converged);
}

TEST_CASE("fit_mallows_huber throws ZeroScale on a degenerate response") {
  riviv::RngStream rng(3, 0);
  const Mat x = oracle::random_matrix(rng, 20, 2);
  const Vec y = x * (Vec(2) << 1.0, 1.0).finished();  // exact fit, zero MAD
  CHECK_THROWS_AS(riviv::fit_mallows_huber(y, x), riviv::ZeroScale);
}

TEST_CASE("regression equivariance: shifting y moves only the intercept") {
  riviv::ScenarioConfig cfg;
  cfg.n = 120;
  riviv::RngStream rng(55, 2);
  const riviv::Dataset ds = riviv::generate_baseline(cfg, rng);
  const Mat design = ds.design();  // column 0 is the intercept
  const double shift = 7.5;
  const Vec y_shifted = ds.y.array() + shift;

  const auto ls_a = riviv::fit_ls(ds.y, design);
  const auto ls_b = riviv::fit_ls(y_shifted, design);
  CHECK(ls_b.coef[0] - ls_a.coef[0] == doctest::Approx(shift).epsilon(1e-10));
  CHECK((ls_b.coef.tail(design.cols() - 1) - ls_a.coef.tail(design.cols() - 1))
            .cwiseAbs()
            .maxCoeff() <= 1e-8);

  const auto m_a = riviv::fit_mallows_huber(ds.y, design);
  const auto m_b = riviv::fit_mallows_huber(y_shifted, design);
  CHECK(m_b.coef[0] - m_a.coef[0] == doctest::Approx(shift).epsilon(1e-8));
  CHECK((m_b.coef.tail(design.cols() - 1) - m_a.coef.tail(design.cols() - 1))
            .cwiseAbs()
            .maxCoeff() <= 1e-8);
}

namespace {

// Orthogonal +-1 columns with X'X = n I and two unit-mean-square residual
// patterns orthogonal to the columns and to each other.
struct OrthoData {
  Mat x;
  Vec ry;
  Vec rx;
};

OrthoData ortho_data() {
  OrthoData d;
  d.x.resize(8, 2);
  d.x.col(0) << 1, 1, 1, 1, -1, -1, -1, -1;
  d.x.col(1) << 1, 1, -1, -1, 1, 1, -1, -1;
  d.ry.resize(8);
  d.ry << 1, -1, 1, -1, 1, -1, 1, -1;
  d.rx.resize(8);
  d.rx << 1, -1, -1, 1, 1, -1, -1, 1;
  return d;
}

}  // namespace

TEST_CASE("cov_blocks_ls: orthonormal design and uncorrelated residuals") {
  const auto d = ortho_data();
  const Vec y = d.x * (Vec(2) << 1.0, 2.0).finished() + d.ry;
  const Vec x_resp = d.x * (Vec(2) << -1.0, 0.5).finished() + d.rx;
  const auto fy = riviv::fit_ls(y, d.x);
  const auto fx = riviv::fit_ls(x_resp, d.x);
  const auto cov = riviv::cov_blocks_ls(fy, fx, d.x, 2);
  CHECK((cov.Sdd - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((cov.Spp - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(cov.Sdp.cwiseAbs().maxCoeff() <= 1e-10);  // exactly orthogonal residuals
}

TEST_CASE("cov_blocks_ls matches the displayed plug-in formula") {
  riviv::RngStream rng(77, 1);
  const int n = 60, p = 2, k = 3;
  const Mat design = oracle::random_matrix(rng, n, p + k);
  const Vec y = oracle::random_vector(rng, n);
  const Vec x = oracle::random_vector(rng, n);
  const auto fy = riviv::fit_ls(y, design);
  const auto fx = riviv::fit_ls(x, design);
  const auto cov = riviv::cov_blocks_ls(fy, fx, design, k);

  const Mat ginv = (design.transpose() * design / n).inverse();
  const double s_yy = fy.residuals.squaredNorm() / n;
  const double s_yx = fy.residuals.dot(fx.residuals) / n;
  const Mat sdd_oracle = (ginv * s_yy).bottomRightCorner(k, k);
  const Mat sdp_oracle = (ginv * s_yx).bottomRightCorner(k, k);
  CHECK((cov.Sdd - sdd_oracle).cwiseAbs().maxCoeff() <=
        1e-8 * sdd_oracle.cwiseAbs().maxCoeff());
  CHECK((cov.Sdp - sdp_oracle).cwiseAbs().maxCoeff() <=
        1e-8 * sdd_oracle.cwiseAbs().maxCoeff());
  CHECK((cov.Spd - cov.Sdp.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("cov_blocks_mallows equals the IF outer-product average") {
  riviv::ScenarioConfig cfg;
  cfg.n = 150;
  riviv::RngStream rng(31, 4);
  riviv::Dataset ds = riviv::generate_baseline(cfg, rng);
  ds.y[3] += 12.0;  // force some clipping
  const Mat design = ds.design();
  const int k = ds.k();
  const auto pk = design.cols();
  riviv::HuberConfig hc;
  const auto fy = riviv::fit_mallows_huber(ds.y, design, hc);
  const auto fx = riviv::fit_mallows_huber(ds.x, design, hc);
  const auto cov = riviv::cov_blocks_mallows(fy, fx, design, k, hc);

  // Oracle: per-observation influence-function products with explicit
  // inverses of the M blocks.
  const Vec omega = riviv::mallows_weights(design);
  const auto n = static_cast<double>(ds.n());
  Mat m_y = Mat::Zero(pk, pk), m_x = Mat::Zero(pk, pk);
  for (Eigen::Index i = 0; i < ds.n(); ++i) {
    const Vec xi = design.row(i).transpose();
    m_y += omega[i] / fy.scale *
           riviv::huber_rho_prime(fy.residuals[i] / fy.scale, hc.cutoff) * xi *
           xi.transpose() / n;
    m_x += omega[i] / fx.scale *
           riviv::huber_rho_prime(fx.residuals[i] / fx.scale, hc.cutoff) * xi *
           xi.transpose() / n;
  }
  const Mat m_y_inv = m_y.inverse();
  const Mat m_x_inv = m_x.inverse();
  Mat sdd = Mat::Zero(pk, pk), sdp = Mat::Zero(pk, pk);
  for (Eigen::Index i = 0; i < ds.n(); ++i) {
    const Vec xi = design.row(i).transpose();
    const Vec if_y = m_y_inv * (omega[i] *
                     riviv::huber_rho(fy.residuals[i] / fy.scale, hc.cutoff) *
                     xi);
    const Vec if_x = m_x_inv * (omega[i] *
                     riviv::huber_rho(fx.residuals[i] / fx.scale, hc.cutoff) *
                     xi);
    sdd += if_y * if_y.transpose() / n;
    sdp += if_y * if_x.transpose() / n;
  }
  const double scale_ref = sdd.cwiseAbs().maxCoeff();
  CHECK((cov.Sdd - sdd.bottomRightCorner(k, k)).cwiseAbs().maxCoeff() <=
        1e-8 * scale_ref);
  CHECK((cov.Sdp - sdp.bottomRightCorner(k, k)).cwiseAbs().maxCoeff() <=
        1e-8 * scale_ref);
  CHECK((cov.Spd - cov.Sdp.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("cov_blocks_mallows reduces to plain moments when nothing clips") {
  const auto d = constant_leverage_data();
  const Vec x_resp = d.design * (Vec(2) << -2.0, 0.5).finished() +
                     0.8 * d.y - 0.8 * (d.design * d.coef);  // reuse pattern
  riviv::HuberConfig hc;
  const auto fy = riviv::fit_mallows_huber(d.y, d.design, hc);
  const auto fx = riviv::fit_mallows_huber(x_resp, d.design, hc);
  CHECK(fy.residuals.cwiseAbs().maxCoeff() / fy.scale < hc.cutoff);
  CHECK(fx.residuals.cwiseAbs().maxCoeff() / fx.scale < hc.cutoff);
  const auto cov = riviv::cov_blocks_mallows(fy, fx, d.design, 2, hc);

  const Vec omega = riviv::mallows_weights(d.design);
  const auto n = static_cast<double>(d.y.size());
  Mat m = Mat::Zero(2, 2), q = Mat::Zero(2, 2);
  for (Eigen::Index i = 0; i < d.y.size(); ++i) {
    const Vec xi = d.design.row(i).transpose();
    m += omega[i] / fy.scale * xi * xi.transpose() / n;
    q += omega[i] * omega[i] * (fy.residuals[i] / fy.scale) *
         (fy.residuals[i] / fy.scale) * xi * xi.transpose() / n;
  }
  const Mat expected = m.inverse() * q * m.inverse().transpose();
  CHECK((cov.Sdd - expected).cwiseAbs().maxCoeff() <=
        1e-8 * expected.cwiseAbs().maxCoeff());
}

TEST_CASE("cov blocks are PSD and invariant to observation order") {
  riviv::ScenarioConfig cfg;
  cfg.n = 100;
  riviv::RngStream rng(61, 8);
  const riviv::Dataset ds = riviv::generate_baseline(cfg, rng);
  const Mat design = ds.design();
  const int k = ds.k();
  const auto fy = riviv::fit_mallows_huber(ds.y, design);
  const auto fx = riviv::fit_mallows_huber(ds.x, design);
  const auto cov = riviv::cov_blocks_mallows(fy, fx, design, k);

  const auto check_psd = [](const Mat& s) {
    Eigen::SelfAdjointEigenSolver<Mat> es(s);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    CHECK((s - s.transpose()).cwiseAbs().maxCoeff() <= 1e-10);
  };
  check_psd(cov.Sdd);
  check_psd(cov.Spp);

  // Reverse the observation order; every block must be unchanged.
  riviv::Dataset rev = ds;
  const Eigen::Index n = ds.n();
  for (Eigen::Index i = 0; i < n; ++i) {
    rev.y[i] = ds.y[n - 1 - i];
    rev.x[i] = ds.x[n - 1 - i];
    rev.Z.row(i) = ds.Z.row(n - 1 - i);
    rev.W.row(i) = ds.W.row(n - 1 - i);
  }
  const Mat design_rev = rev.design();
  const auto fy_r = riviv::fit_mallows_huber(rev.y, design_rev);
  const auto fx_r = riviv::fit_mallows_huber(rev.x, design_rev);
  const auto cov_r = riviv::cov_blocks_mallows(fy_r, fx_r, design_rev, k);
  CHECK((cov.Sdd - cov_r.Sdd).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((cov.Sdp - cov_r.Sdp).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("sensitivity_curve: probe on the fitted surface displaces nothing") {
  riviv::ScenarioConfig cfg;
  cfg.n = 120;
  riviv::RngStream rng(88, 0);
  const riviv::Dataset ds = riviv::generate_baseline(cfg, rng);
  const Mat design = ds.design();

  riviv::ProbePoint probe;
  probe.z = (Vec(3) << 0.4, -0.2, 1.1).finished();
  probe.w = (Vec(1) << 0.3).finished();
  Vec row(design.cols());
  row << 1.0, probe.w[0], probe.z[0], probe.z[1], probe.z[2];

  const auto fy = riviv::fit_ls(ds.y, design);
  const auto fx = riviv::fit_ls(ds.x, design);
  probe.y = row.dot(fy.coef);
  probe.x = row.dot(fx.coef);
  const auto ls_curve =
      riviv::sensitivity_curve(EstimatorKind::LS, ds, probe, {0.02, 0.1});
  CHECK(ls_curve[0] <= 1e-8);
  CHECK(ls_curve[1] <= 1e-8);

  const auto my = riviv::fit_mallows_huber(ds.y, design);
  const auto mx = riviv::fit_mallows_huber(ds.x, design);
  probe.y = row.dot(my.coef);
  probe.x = row.dot(mx.coef);
  const auto m_curve =
      riviv::sensitivity_curve(EstimatorKind::MallowsHuber, ds, probe, {0.02});
  CHECK(m_curve[0] <= 0.5);  // tiny next to the O(10^2..10^4) probes below
}

TEST_CASE("sensitivity_curve: LS grows linearly, Mallows plateaus") {
  riviv::ScenarioConfig cfg;  // section-4 baseline design
  riviv::RngStream rng(123, 0);
  const riviv::Dataset ds = riviv::generate_baseline(cfg, rng);

  riviv::ProbePoint probe;
  probe.z = (Vec(3) << 2.0, 0.0, 0.0).finished();
  probe.w = (Vec(1) << 0.0).finished();
  probe.x = 0.0;
  const double t = 0.02;
  const std::vector<double> mags = {1e2, 1e3, 1e4};

  std::vector<double> ls_disp, m_disp;
  for (const double m : mags) {
    probe.y = m;
    ls_disp.push_back(
        riviv::sensitivity_curve(EstimatorKind::LS, ds, probe, {t})[0]);
    m_disp.push_back(riviv::sensitivity_curve(EstimatorKind::MallowsHuber, ds,
                                              probe, {t})[0]);
  }

  // LS displacement matches the closed-form update of the appended sample.
  {
    const int replicas = static_cast<int>(std::ceil(t * ds.n()));
    const Mat design = ds.design();
    Vec row(design.cols());
    row << 1.0, probe.w[0], probe.z[0], probe.z[1], probe.z[2];
    const Mat a = design.transpose() * design +
                  replicas * row * row.transpose();
    probe.y = mags.back();
    const Vec by = design.transpose() * ds.y + replicas * row * probe.y;
    const Vec bx = design.transpose() * ds.x + replicas * row * probe.x;
    const Vec dy = a.inverse() * by - oracle::ls_normal_equations(ds.y, design);
    const Vec dx = a.inverse() * bx - oracle::ls_normal_equations(ds.x, design);
    const double predicted =
        std::sqrt(dy.tail(3).squaredNorm() + dx.tail(3).squaredNorm()) / t;
    CHECK(ls_disp.back() == doctest::Approx(predicted).epsilon(1e-6));
  }

  // Roughly linear growth for LS across two decades.
  CHECK(ls_disp[1] / ls_disp[0] > 5.0);
  CHECK(ls_disp[2] / ls_disp[1] > 5.0);

  // Plateau for Mallows: variation below 5 percent across magnitudes.
  const double lo = *std::min_element(m_disp.begin(), m_disp.end());
  const double hi = *std::max_element(m_disp.begin(), m_disp.end());
  CHECK((hi - lo) / lo < 0.05);

  // Bounded-vs-unbounded contrast at the largest probe.
  CHECK(ls_disp.back() / m_disp.back() > 100.0);

  CHECK_THROWS_AS(
      riviv::sensitivity_curve(EstimatorKind::LS, ds, probe, {0.7}),
      riviv::InputError);
}
