#pragma once

#include <string>

#include "riviv/linalg.hpp"
#include "riviv/reduced_form.hpp"
#include "riviv/rng.hpp"

namespace riviv {

enum class StatKind { RAR, RK, RW, RCLR };

std::string to_string(StatKind kind);
StatKind stat_kind_from_string(const std::string& name);

/// Value of one n-scaled statistic at a hypothesized beta0. w_tilde carries
/// the CLR conditioning quantity n * D' Lambda^{-1} D (equal to the RW value)
/// and is meaningful for RW and RCLR results.
struct StatResult {
  StatKind kind = StatKind::RAR;
  double value = 0.0;
  double w_tilde = 0.0;
  double beta0 = 0.0;
};

/// g = delta_hat - beta0 * pi_hat.
Vec g_stat(const ReducedFormFit& fit, double beta0);

/// Omega = Sdd - beta0 (Sdp + Spd) + beta0^2 Spp, symmetrized.
Mat omega(const ReducedFormFit& fit, double beta0);

/// D = pi_hat - (Spd - Spp beta0) Omega^{-1} g.
Vec d_stat(const ReducedFormFit& fit, double beta0);

/// Lambda = Spp - (Spd - Spp beta0) Omega^{-1} (Sdp - Spp beta0), symmetrized.
Mat lambda(const ReducedFormFit& fit, double beta0);

/// n * g' Omega^{-1} g; chi-square_k limit under the null.
StatResult rar(const ReducedFormFit& fit, double beta0);

/// Score statistic n * g'Omega^{-1}D (D'Omega^{-1}D)^{-1} D'Omega^{-1}g;
/// chi-square_1 limit under the null, never exceeds the RAR value, and
/// coincides with it when k = 1. Throws DegenerateDirection when D is
/// indistinguishable from zero, i.e. cancellation noise relative to the
/// magnitudes it is assembled from.
StatResult rk(const ReducedFormFit& fit, double beta0);

/// n * D' Lambda^{-1} D; this is the CLR conditioning quantity W-tilde.
StatResult rw(const ReducedFormFit& fit, double beta0);

/// Half-sum decomposition
///   0.5 * [RAR - RW + sqrt((RAR - RW)^2 + 4 RW RK)]
/// of the n-scaled components. When D is numerically zero (unscaled
/// D'Lambda^{-1}D < 1e-10) the statistic collapses to RAR.
StatResult rclr(const ReducedFormFit& fit, double beta0);

/// Simulated draws of the conditional CLR null distribution: independent
/// pairs a ~ chi-square_{k-1}, b ~ chi-square_1. One draw set can be reused
/// across many w_tilde values (test inversion keeps the decision function
/// deterministic in beta0 that way).
class ClrSims {
 public:
  static ClrSims draw(RngStream& rng, int k, int sims);

  /// Empirical (1 - alpha) quantile of
  ///   0.5 * {a + b - w + sqrt((a + b + w)^2 - 4 w a)},
  /// order statistic at index ceil(sims * (1 - alpha)). For k = 1 the
  /// distribution is exactly chi-square_1 (a is identically zero), so the
  /// exact quantile is returned instead of a simulated one.
  double critical_value(double w_tilde, double alpha) const;

  /// Exceedance probability of an observed statistic under the same draws.
  double p_value(double w_tilde, double stat) const;

  int k() const { return k_; }
  int sims() const { return static_cast<int>(a_.size()); }

 private:
  int k_ = 1;
  Vec a_;
  Vec b_;
};

/// Conditional (1 - alpha) CLR critical value by simulation; sims >= 10^4.
double clr_critical_value(double w_tilde, int k, double alpha, int sims,
                          RngStream& rng);

struct TestOutcome {
  StatResult stat;
  double critical = 0.0;
  double p_value = 1.0;
  bool reject = false;
  double alpha = 0.05;
};

/// Evaluate one test of H0: beta = beta0. RAR and RW compare against the
/// chi-square_k quantile, RK against chi-square_1, RCLR against the simulated
/// conditional critical value (critical value and p-value share one draw
/// set). rng is only consumed for RCLR.
TestOutcome run_test(const ReducedFormFit& fit, double beta0, StatKind kind,
                     double alpha, int sims, RngStream& rng);

/// Same decision rule with caller-provided CLR draws (ignored unless
/// kind == RCLR); used by test inversion to share draws across grid points.
TestOutcome run_test_with_draws(const ReducedFormFit& fit, double beta0,
                                StatKind kind, double alpha,
                                const ClrSims* draws);

}  // namespace riviv
