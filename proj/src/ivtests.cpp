#include "riviv/ivtests.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "riviv/chi2.hpp"
#include "riviv/errors.hpp"

namespace riviv {

namespace {

// Unscaled D' Lambda^{-1} D below this treats D as zero and collapses the
// CLR statistic onto AR.
constexpr double kDZeroThreshold = 1e-10;

double clr_combine(double a, double b, double w) {
  const double s = a + b;
  const double disc = (s + w) * (s + w) - 4.0 * w * a;
  return 0.5 * (s - w + std::sqrt(std::max(0.0, disc)));
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("alpha must lie in (0, 1)");
}

}  // namespace

std::string to_string(StatKind kind) {
  switch (kind) {
    case StatKind::RAR: return "rar";
    case StatKind::RK: return "rk";
    case StatKind::RW: return "rw";
    case StatKind::RCLR: return "rclr";
  }
  return "?";
}

StatKind stat_kind_from_string(const std::string& name) {
  if (name == "rar") return StatKind::RAR;
  if (name == "rk") return StatKind::RK;
  if (name == "rw") return StatKind::RW;
  if (name == "rclr") return StatKind::RCLR;
  throw InputError("unknown test kind '" + name +
                   "' (expected rar, rk, rw or rclr)");
}

Vec g_stat(const ReducedFormFit& fit, double beta0) {
  return fit.delta_hat - beta0 * fit.pi_hat;
}

Mat omega(const ReducedFormFit& fit, double beta0) {
  return symmetrize(fit.cov.Sdd - beta0 * (fit.cov.Sdp + fit.cov.Spd) +
                    beta0 * beta0 * fit.cov.Spp);
}

Vec d_stat(const ReducedFormFit& fit, double beta0) {
  const Mat c = fit.cov.Spd - beta0 * fit.cov.Spp;
  const Vec g = g_stat(fit, beta0);
  const Vec om_inv_g = solve_spd(omega(fit, beta0), g);
  return fit.pi_hat - c * om_inv_g;
}

Mat lambda(const ReducedFormFit& fit, double beta0) {
  const Mat c = fit.cov.Spd - beta0 * fit.cov.Spp;
  return symmetrize(fit.cov.Spp -
                    c * solve_spd(omega(fit, beta0), Mat(c.transpose())));
}

StatResult rar(const ReducedFormFit& fit, double beta0) {
  const Vec g = g_stat(fit, beta0);
  const Vec om_inv_g = solve_spd(omega(fit, beta0), g);
  const double q = g.dot(om_inv_g);
  return {StatKind::RAR, static_cast<double>(fit.n) * q, 0.0, beta0};
}

StatResult rk(const ReducedFormFit& fit, double beta0) {
  const Mat om = omega(fit, beta0);
  const Vec g = g_stat(fit, beta0);
  const Mat c = fit.cov.Spd - beta0 * fit.cov.Spp;
  const Vec correction = c * solve_spd(om, g);
  const Vec d = fit.pi_hat - correction;
  // D is degenerate when it is pure cancellation noise relative to the
  // magnitudes it was built from.
  const double d_scale = fit.pi_hat.norm() + correction.norm();
  if (d.norm() <= 1e-10 * d_scale)
    throw DegenerateDirection("rk: D is numerically zero at beta0 = " +
                              std::to_string(beta0));
  const Vec t = solve_spd(om, d);
  const double num = g.dot(t);
  const double value = static_cast<double>(fit.n) * num * num / d.dot(t);
  return {StatKind::RK, value, 0.0, beta0};
}

StatResult rw(const ReducedFormFit& fit, double beta0) {
  const Vec d = d_stat(fit, beta0);
  const Vec lam_inv_d = solve_spd(lambda(fit, beta0), d);
  const double q = d.dot(lam_inv_d);
  const double value = static_cast<double>(fit.n) * q;
  return {StatKind::RW, value, value, beta0};
}

StatResult rclr(const ReducedFormFit& fit, double beta0) {
  const double ar = rar(fit, beta0).value;
  const Vec d = d_stat(fit, beta0);
  const Vec lam_inv_d = solve_spd(lambda(fit, beta0), d);
  const double w_unscaled = d.dot(lam_inv_d);
  const double w = static_cast<double>(fit.n) * w_unscaled;
  if (w_unscaled < kDZeroThreshold)
    return {StatKind::RCLR, ar, w, beta0};
  double k_val = 0.0;
  try {
    k_val = rk(fit, beta0).value;
  } catch (const DegenerateDirection&) {
    return {StatKind::RCLR, ar, w, beta0};  // D = 0 limit
  }
  const double diff = ar - w;
  const double value =
      0.5 * (diff + std::sqrt(std::max(0.0, diff * diff + 4.0 * w * k_val)));
  return {StatKind::RCLR, value, w, beta0};
}

ClrSims ClrSims::draw(RngStream& rng, int k, int sims) {
  if (k < 1) throw std::domain_error("ClrSims: k must be >= 1");
  if (sims < 1) throw std::domain_error("ClrSims: sims must be >= 1");
  ClrSims out;
  out.k_ = k;
  out.a_.resize(sims);
  out.b_.resize(sims);
  for (int i = 0; i < sims; ++i) {
    out.a_[i] = chi2_sample(rng, k - 1);
    out.b_[i] = chi2_sample(rng, 1);
  }
  return out;
}

double ClrSims::critical_value(double w_tilde, double alpha) const {
  check_alpha(alpha);
  if (w_tilde < 0.0)
    throw std::domain_error("ClrSims: w_tilde must be nonnegative");
  if (k_ == 1) return chi2_quantile(1, 1.0 - alpha);  // a == 0, exactly chi2_1
  const int s = sims();
  std::vector<double> v(s);
  for (int i = 0; i < s; ++i) v[i] = clr_combine(a_[i], b_[i], w_tilde);
  auto idx = static_cast<std::ptrdiff_t>(
      std::ceil(static_cast<double>(s) * (1.0 - alpha)));
  idx = std::clamp<std::ptrdiff_t>(idx, 1, s);
  std::nth_element(v.begin(), v.begin() + (idx - 1), v.end());
  return v[idx - 1];
}

double ClrSims::p_value(double w_tilde, double stat) const {
  if (k_ == 1) return 1.0 - chi2_cdf(1, stat);
  const int s = sims();
  int count = 0;
  for (int i = 0; i < s; ++i)
    if (clr_combine(a_[i], b_[i], w_tilde) >= stat) ++count;
  return static_cast<double>(count) / static_cast<double>(s);
}

double clr_critical_value(double w_tilde, int k, double alpha, int sims,
                          RngStream& rng) {
  if (sims < 10000)
    throw std::domain_error("clr_critical_value: sims must be >= 10^4");
  return ClrSims::draw(rng, k, sims).critical_value(w_tilde, alpha);
}

TestOutcome run_test_with_draws(const ReducedFormFit& fit, double beta0,
                                StatKind kind, double alpha,
                                const ClrSims* draws) {
  check_alpha(alpha);
  TestOutcome out;
  out.alpha = alpha;
  switch (kind) {
    case StatKind::RAR:
      out.stat = rar(fit, beta0);
      out.critical = chi2_quantile(fit.k, 1.0 - alpha);
      out.p_value = 1.0 - chi2_cdf(fit.k, out.stat.value);
      break;
    case StatKind::RK:
      out.stat = rk(fit, beta0);
      out.critical = chi2_quantile(1, 1.0 - alpha);
      out.p_value = 1.0 - chi2_cdf(1, out.stat.value);
      break;
    case StatKind::RW:
      out.stat = rw(fit, beta0);
      out.critical = chi2_quantile(fit.k, 1.0 - alpha);
      out.p_value = 1.0 - chi2_cdf(fit.k, out.stat.value);
      break;
    case StatKind::RCLR: {
      if (draws == nullptr)
        throw std::invalid_argument("run_test_with_draws: RCLR needs draws");
      if (draws->k() != fit.k)
        throw std::invalid_argument(
            "run_test_with_draws: draws were made for a different k");
      out.stat = rclr(fit, beta0);
      out.critical = draws->critical_value(out.stat.w_tilde, alpha);
      out.p_value = draws->p_value(out.stat.w_tilde, out.stat.value);
      break;
    }
  }
  out.reject = out.stat.value > out.critical;
  return out;
}

TestOutcome run_test(const ReducedFormFit& fit, double beta0, StatKind kind,
                     double alpha, int sims, RngStream& rng) {
  if (kind == StatKind::RCLR) {
    if (sims < 10000)
      throw std::domain_error("run_test: RCLR requires sims >= 10^4");
    const ClrSims draws = ClrSims::draw(rng, fit.k, sims);
    return run_test_with_draws(fit, beta0, kind, alpha, &draws);
  }
  return run_test_with_draws(fit, beta0, kind, alpha, nullptr);
}

}  // namespace riviv
