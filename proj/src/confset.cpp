#include "riviv/confset.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "riviv/errors.hpp"

namespace riviv {

void GridSpec::validate() const {
  if (!(lo < hi) || points < 3)
    throw EmptyGrid("grid: need lo < hi and at least 3 points");
  for (const double p : tail_probe)
    if (p >= lo && p <= hi)
      throw EmptyGrid("grid: tail probes must lie outside [lo, hi]");
}

std::vector<double> GridSpec::values() const {
  std::vector<double> v(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (int i = 0; i < points; ++i) v[i] = lo + step * i;
  v.back() = hi;
  return v;
}

GridSpec GridSpec::default_for(const ReducedFormFit& fit) {
  GridSpec g;
  const double pp = fit.pi_hat.squaredNorm();
  if (pp > 0.0) {
    const double bhat = fit.pi_hat.dot(fit.delta_hat) / pp;
    const Mat om = symmetrize(fit.cov.Sdd - bhat * (fit.cov.Sdp + fit.cov.Spd) +
                              bhat * bhat * fit.cov.Spp);
    const double var =
        fit.pi_hat.dot(om * fit.pi_hat) / static_cast<double>(fit.n);
    const double se = std::sqrt(std::max(0.0, var)) / pp;
    if (std::isfinite(bhat) && std::isfinite(se)) {
      g.lo = std::min(g.lo, bhat - 10.0 * se);
      g.hi = std::max(g.hi, bhat + 10.0 * se);
    }
  }
  return g;
}

bool ConfidenceSet::contains(double beta) const {
  for (const auto& iv : intervals) {
    const bool above = iv.lo_unbounded || beta >= iv.lo;
    const bool below = iv.hi_unbounded || beta <= iv.hi;
    if (above && below) return true;
  }
  return false;
}

std::string ConfidenceSet::format(int precision) const {
  if (intervals.empty()) return "(empty)";
  std::ostringstream os;
  os.precision(precision);
  os << std::fixed;
  bool first = true;
  for (const auto& iv : intervals) {
    if (!first) os << " U ";
    first = false;
    const bool any_unbounded = iv.lo_unbounded || iv.hi_unbounded;
    if (iv.lo_unbounded)
      os << "(-inf, ";
    else
      os << (any_unbounded ? "(" : "[") << iv.lo << ", ";
    if (iv.hi_unbounded)
      os << "inf)";
    else
      os << iv.hi << (any_unbounded ? ")" : "]");
  }
  return os.str();
}

namespace {

// Bisection between a rejected and an accepted point; returns the final
// bracket midpoint. decide(beta) -> true means accepted.
template <typename Decide>
double refine_boundary(double rejected, double accepted, const Decide& decide) {
  for (int step = 0; step < 10; ++step) {
    const double mid = 0.5 * (rejected + accepted);
    (decide(mid) ? accepted : rejected) = mid;
  }
  return 0.5 * (rejected + accepted);
}

}  // namespace

ConfidenceSet invert_test_fitted(const ReducedFormFit& fit, StatKind test_kind,
                                 double alpha, const GridSpec& grid, int sims,
                                 RngStream& rng) {
  grid.validate();

  std::optional<ClrSims> draws;
  if (test_kind == StatKind::RCLR) {
    if (sims < 10000)
      throw std::domain_error("invert_test: RCLR requires sims >= 10^4");
    draws = ClrSims::draw(rng, fit.k, sims);
  }
  const auto decide = [&](double beta0) {
    return !run_test_with_draws(fit, beta0, test_kind, alpha,
                                draws ? &*draws : nullptr)
                .reject;
  };

  // Decision points: low probes, then the grid, then high probes.
  std::vector<double> lo_probes, hi_probes;
  for (const double p : grid.tail_probe)
    (p < grid.lo ? lo_probes : hi_probes).push_back(p);
  std::sort(lo_probes.begin(), lo_probes.end());
  std::sort(hi_probes.begin(), hi_probes.end());

  std::vector<double> points = lo_probes;
  const std::vector<double> grid_vals = grid.values();
  points.insert(points.end(), grid_vals.begin(), grid_vals.end());
  points.insert(points.end(), hi_probes.begin(), hi_probes.end());

  std::vector<char> accepted(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) accepted[i] = decide(points[i]);

  ConfidenceSet set;
  set.level = 1.0 - alpha;
  set.test_kind = test_kind;
  set.grid = grid;

  const std::size_t npts = points.size();
  const std::size_t n_lo = lo_probes.size();
  std::size_t i = 0;
  while (i < npts) {
    if (!accepted[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < npts && accepted[j + 1]) ++j;

    ConfInterval iv;
    if (i == 0 && n_lo > 0) {
      iv.lo_unbounded = true;  // most extreme low probe accepted
    } else if (i == 0) {
      iv.lo = points[i];
    } else {
      iv.lo = refine_boundary(points[i - 1], points[i], decide);
    }
    if (j == npts - 1 && !hi_probes.empty()) {
      iv.hi_unbounded = true;
    } else if (j == npts - 1) {
      iv.hi = points[j];
    } else {
      iv.hi = refine_boundary(points[j + 1], points[j], decide);
    }
    set.intervals.push_back(iv);
    i = j + 1;
  }
  return set;
}

ConfidenceSet invert_test(const Dataset& data, EstimatorKind estimator,
                          StatKind test_kind, double alpha,
                          const GridSpec& grid, int sims, RngStream& rng,
                          const HuberConfig& cfg) {
  const ReducedFormFit fit = fit_reduced_form(data, estimator, cfg);
  return invert_test_fitted(fit, test_kind, alpha, grid, sims, rng);
}

}  // namespace riviv
