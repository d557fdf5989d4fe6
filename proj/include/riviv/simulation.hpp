#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "riviv/dataset.hpp"
#include "riviv/ivtests.hpp"
#include "riviv/regression.hpp"
#include "riviv/rng.hpp"

namespace riviv {

enum class Contamination { None, OutlierY, OutlierYZ, T3Errors };

std::string to_string(Contamination c);
Contamination contamination_from_string(const std::string& name);

/// Monte Carlo scenario:
///   x = w + pi * (z_1 + ... + z_k) + v,   y = beta * x + 2 w + u,
/// z and w iid standard normal, (u, v) bivariate normal with unit variances
/// and correlation rho (bivariate t(3) for the first 50 observations under
/// T3Errors).
struct ScenarioConfig {
  int n = 250;
  int k = 3;
  double pi = 1.0;
  double beta = 0.0;
  double rho = 0.5;
  Contamination contamination = Contamination::None;
  int reps = 10000;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  int sims = 10000;  // CLR critical-value draws per replication
  bool intercept = true;
  HuberConfig huber;

  void validate() const;
};

/// Draw one sample from the scenario DGP. Under T3Errors the alternative
/// error law is applied at generation time for observations 1..50 (requires
/// n >= 50); the point-outlier kinds are applied afterwards by
/// apply_contamination.
Dataset generate_baseline(const ScenarioConfig& cfg, RngStream& rng);

/// Point edits: OutlierY sets y_1 = 20; OutlierYZ sets y_1 = 20 and
/// z_11 = 5; None and T3Errors return the sample unchanged.
Dataset apply_contamination(const Dataset& data, Contamination kind);

/// generate_baseline followed by apply_contamination.
Dataset generate_scenario(const ScenarioConfig& cfg, RngStream& rng);

/// One test requested from the harness: which estimator feeds which
/// statistic. ls_rclr is the classical CLR test, mallows_rclr the robust one.
struct TestSpec {
  EstimatorKind estimator = EstimatorKind::MallowsHuber;
  StatKind stat = StatKind::RCLR;

  std::string label() const;
  static TestSpec from_label(const std::string& label);
};

struct PowerCell {
  long long rejections = 0;
  long long valid = 0;
  double rate = 0.0;
  double mc_se = 0.0;
};

/// Rejection frequencies of H0: beta = 0 across true beta values.
struct PowerCurve {
  std::vector<double> beta_grid;
  std::vector<TestSpec> tests;
  std::vector<std::vector<PowerCell>> cells;  // [test][beta]
  std::vector<long long> failures;            // failed replications per beta
  std::vector<long long> nonconverged;        // IRLS non-convergences per beta

  const PowerCell& at(std::size_t test_idx, std::size_t beta_idx) const {
    return cells[test_idx][beta_idx];
  }
  /// CSV with stable columns: beta,test,rejection_rate,mc_se.
  std::string to_csv() const;
};

/// Spec default grids: 41 points on [-1, 1] for strong instruments
/// (|pi| >= 0.5), 41 points on [-4, 4] otherwise.
std::vector<double> default_beta_grid(double pi);

/// Run the Monte Carlo study: for every true beta and replication, generate,
/// contaminate, fit each requested estimator once, and test H0: beta = 0.
/// Replications are independent with stream id = beta_index * reps + rep, so
/// results do not depend on the thread count. Replication failures
/// (numerical errors) are counted per beta; a failure rate above 1% aborts.
PowerCurve power_curve(const ScenarioConfig& cfg,
                       const std::vector<double>& beta_grid,
                       const std::vector<TestSpec>& tests, int threads = 0);

/// Monte Carlo check of the asymptotic block-diagonality between g and D
/// under the null (beta0 = the true beta).
struct GdIndependenceReport {
  Vec mean_g, mean_d;        // means of sqrt(n) g and sqrt(n) D
  Vec se_mean_g, se_mean_d;  // MC standard errors of those means
  Mat cross_cov;             // empirical cov(sqrt(n) g, sqrt(n) D)
  Mat cross_se;              // MC standard error per entry
  Mat var_g;                 // empirical covariance of sqrt(n) g
  Mat omega_avg;             // average plug-in Omega
  int reps = 0;
  int failures = 0;
};

GdIndependenceReport gd_independence_diagnostic(
    const ScenarioConfig& cfg, EstimatorKind estimator = EstimatorKind::LS,
    int threads = 0);

}  // namespace riviv
