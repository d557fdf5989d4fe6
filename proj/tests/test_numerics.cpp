#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>
#include <vector>

#include "oracles.hpp"
#include "riviv/chi2.hpp"
#include "riviv/errors.hpp"
#include "riviv/linalg.hpp"
#include "riviv/rng.hpp"
#include "riviv/robust.hpp"

using riviv::Mat;
using riviv::Vec;

TEST_CASE("solve_spd identity and diagonal cases") {
  const Vec b = (Vec(3) << 1.0, -2.0, 3.5).finished();
  const Mat x = riviv::solve_spd(Mat::Identity(3, 3), b);
  CHECK((x - b).cwiseAbs().maxCoeff() == doctest::Approx(0.0));

  Mat a = Mat::Zero(2, 2);
  a(0, 0) = 2.0;
  a(1, 1) = 4.0;
  const Vec rhs = (Vec(2) << 2.0, 8.0).finished();
  const Mat sol = riviv::solve_spd(a, rhs);
  CHECK(sol(0, 0) == doctest::Approx(1.0));
  CHECK(sol(1, 0) == doctest::Approx(2.0));
}

TEST_CASE("solve_spd residual property on random SPD systems") {
  riviv::RngStream rng(42, 0);
  for (int rep = 0; rep < 50; ++rep) {
    const Mat m = oracle::random_matrix(rng, 5, 5);
    const Mat a = m.transpose() * m + Mat::Identity(5, 5);
    const Mat b = oracle::random_matrix(rng, 5, 2);
    const Mat x = riviv::solve_spd(a, b);
    const double resid = (a * x - b).cwiseAbs().maxCoeff();
    CHECK(resid <= 1e-8 * b.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("solve_spd rejects non-PD and asymmetric inputs") {
  Mat a = Mat::Identity(3, 3);
  a(2, 2) = -1.0;
  CHECK_THROWS_AS(riviv::solve_spd(a, Mat::Identity(3, 3)),
                  riviv::NotPositiveDefinite);

  // Rank-1: collinear-instrument style degeneracy.
  const Vec v = (Vec(3) << 1.0, 2.0, 3.0).finished();
  const Mat rank1 = v * v.transpose();
  CHECK_THROWS_AS(riviv::solve_spd(rank1, Mat::Identity(3, 3)),
                  riviv::NotPositiveDefinite);

  Mat asym = Mat::Identity(2, 2);
  asym(0, 1) = 0.5;
  CHECK_THROWS_AS(riviv::solve_spd(asym, Mat::Identity(2, 2)),
                  riviv::InputError);

  CHECK_THROWS_AS(riviv::solve_spd(Mat::Identity(3, 3), Mat::Identity(2, 2)),
                  riviv::InputError);
}

TEST_CASE("chi2_quantile matches the quadrature oracle") {
  const double q1 = riviv::chi2_quantile(1, 0.95);
  CHECK(std::fabs(q1 - 3.8415) <= 1e-3);
  CHECK(std::fabs(oracle::chi2_cdf_quadrature(1, q1) - 0.95) <= 2e-4);

  const double q3 = riviv::chi2_quantile(3, 0.95);
  CHECK(std::fabs(q3 - 7.8147) <= 1e-3);
  CHECK(std::fabs(oracle::chi2_cdf_quadrature(3, q3) - 0.95) <= 2e-4);
}

TEST_CASE("chi2_quantile round trip and monotonicity") {
  for (const int df : {1, 2, 3, 5, 10, 50}) {
    for (const double p : {0.01, 0.1, 0.5, 0.9, 0.95, 0.999}) {
      const double q = riviv::chi2_quantile(df, p);
      CHECK(std::fabs(riviv::chi2_cdf(df, q) - p) <= 1e-8);
    }
  }
  // Strictly increasing in p.
  double prev = 0.0;
  for (const double p : {0.05, 0.25, 0.5, 0.75, 0.9, 0.99}) {
    const double q = riviv::chi2_quantile(4, p);
    CHECK(q > prev);
    prev = q;
  }
  // Strictly increasing in df at fixed p >= 0.5.
  prev = 0.0;
  for (const int df : {1, 2, 3, 4, 8, 16}) {
    const double q = riviv::chi2_quantile(df, 0.9);
    CHECK(q > prev);
    prev = q;
  }
  CHECK_THROWS(riviv::chi2_quantile(3, 0.0));
  CHECK_THROWS(riviv::chi2_quantile(3, 1.0));
  CHECK_THROWS(riviv::chi2_quantile(3, -0.2));
}

TEST_CASE("chi2_sample moments and the df = 0 point mass") {
  riviv::RngStream rng(7, 0);
  for (int i = 0; i < 1000; ++i) CHECK(riviv::chi2_sample(rng, 0) == 0.0);
  CHECK_THROWS(riviv::chi2_sample(rng, -1));

  const int n = 100000;
  double mean3 = 0.0;
  for (int i = 0; i < n; ++i) mean3 += riviv::chi2_sample(rng, 3);
  mean3 /= n;
  CHECK(std::fabs(mean3 - 3.0) <= 0.05);

  int below = 0;
  for (int i = 0; i < n; ++i)
    if (riviv::chi2_sample(rng, 1) <= 3.8415) ++below;
  CHECK(std::fabs(static_cast<double>(below) / n - 0.95) <= 0.005);
}

TEST_CASE("bivariate_normal correlation and margins") {
  const int n = 100000;
  const auto sample_moments = [&](double rho, std::uint64_t seed) {
    riviv::RngStream rng(seed, 0);
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
      const auto [a, b] = riviv::bivariate_normal(rng, rho);
      sx += a;
      sy += b;
      sxx += a * a;
      syy += b * b;
      sxy += a * b;
    }
    const double vx = sxx / n - (sx / n) * (sx / n);
    const double vy = syy / n - (sy / n) * (sy / n);
    const double cxy = sxy / n - (sx / n) * (sy / n);
    return std::tuple{cxy / std::sqrt(vx * vy), vx, vy};
  };

  const auto [corr0, vx0, vy0] = sample_moments(0.0, 11);
  CHECK(std::fabs(corr0) <= 0.01);

  const auto [corr5, vx5, vy5] = sample_moments(0.5, 12);
  CHECK(std::fabs(corr5 - 0.5) <= 0.01);

  const auto [corr9, vx9, vy9] = sample_moments(0.9, 13);
  CHECK(std::fabs(vx9 - 1.0) <= 0.02);
  CHECK(std::fabs(vy9 - 1.0) <= 0.02);

  riviv::RngStream rng(14, 0);
  CHECK_THROWS(riviv::bivariate_normal(rng, 1.0));
}

namespace {

double rank_correlation(const std::vector<double>& a,
                        const std::vector<double>& b) {
  const auto ranks = [](const std::vector<double>& v) {
    std::vector<int> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](int i, int j) { return v[i] < v[j]; });
    std::vector<double> r(v.size());
    for (std::size_t p = 0; p < idx.size(); ++p) r[idx[p]] = p;
    return r;
  };
  const auto ra = ranks(a), rb = ranks(b);
  const double n = static_cast<double>(a.size());
  const double mean = (n - 1.0) / 2.0;
  double num = 0, da = 0, db = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (ra[i] - mean) * (rb[i] - mean);
    da += (ra[i] - mean) * (ra[i] - mean);
    db += (rb[i] - mean) * (rb[i] - mean);
  }
  return num / std::sqrt(da * db);
}

}  // namespace

TEST_CASE("bivariate_t3 symmetry, heavy tails and independence") {
  const int n = 100000;
  riviv::RngStream rng(21, 0);
  std::vector<double> m1(n), m2(n);
  for (int i = 0; i < n; ++i) {
    const auto [a, b] = riviv::bivariate_t3(rng, 0.5);
    m1[i] = a;
    m2[i] = b;
  }
  const auto med = [](std::vector<double> v) {
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    return v[v.size() / 2];
  };
  CHECK(std::fabs(med(m1)) <= 0.02);
  CHECK(std::fabs(med(m2)) <= 0.02);

  // Empirical excess kurtosis far beyond the normal's.
  double s2 = 0, s4 = 0;
  for (const double v : m1) {
    s2 += v * v;
    s4 += v * v * v * v;
  }
  s2 /= n;
  s4 /= n;
  CHECK(s4 / (s2 * s2) - 3.0 > 2.0);

  riviv::RngStream rng0(22, 0);
  std::vector<double> a0(n), b0(n);
  for (int i = 0; i < n; ++i) {
    const auto [a, b] = riviv::bivariate_t3(rng0, 0.0);
    a0[i] = a;
    b0[i] = b;
  }
  CHECK(std::fabs(rank_correlation(a0, b0)) <= 0.02);
}

TEST_CASE("median and mad conventions") {
  CHECK(riviv::median((Vec(3) << 1, 2, 3).finished()) == 2.0);
  CHECK(riviv::mad((Vec(3) << 1, 2, 3).finished()) == 1.0);
  CHECK(riviv::median((Vec(4) << 1, 2, 3, 4).finished()) == 2.5);
  CHECK(riviv::mad((Vec(4) << 1, 2, 3, 4).finished()) == 1.0);
  CHECK_THROWS_AS(riviv::median(Vec()), riviv::InputError);
  CHECK_THROWS_AS(riviv::mad(Vec()), riviv::InputError);

  riviv::RngStream rng(33, 0);
  Vec draws(100000);
  for (Eigen::Index i = 0; i < draws.size(); ++i) draws[i] = rng.normal();
  CHECK(std::fabs(riviv::mad(draws) / 0.6745 - 1.0) <= 0.02);
}

TEST_CASE("RngStream reproducibility and stream independence") {
  riviv::RngStream a(123, 5), b(123, 5), c(123, 6);
  bool identical = true, distinct = false;
  for (int i = 0; i < 200; ++i) {
    const double va = a.uniform();
    identical = identical && va == b.uniform();
    distinct = distinct || va != c.uniform();
  }
  CHECK(identical);
  CHECK(distinct);

  riviv::RngStream u(9, 0);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
}
