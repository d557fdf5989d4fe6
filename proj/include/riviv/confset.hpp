#pragma once

#include <optional>
#include <string>
#include <vector>

#include "riviv/dataset.hpp"
#include "riviv/ivtests.hpp"

namespace riviv {

/// Inversion grid for beta0. tail_probe holds extreme values checked for
/// unbounded confidence-set ends.
struct GridSpec {
  double lo = -20.0;
  double hi = 20.0;
  int points = 401;
  std::vector<double> tail_probe = {-1e6, 1e6};

  void validate() const;
  std::vector<double> values() const;

  /// Spec default: 401 points on [bhat - 10 se, bhat + 10 se] widened to at
  /// least [-20, 20], probes at +-1e6. bhat/se come from the indirect
  /// least-squares estimate on the reduced form.
  static GridSpec default_for(const ReducedFormFit& fit);
};

struct ConfInterval {
  double lo = 0.0;  // -inf when lo_unbounded
  double hi = 0.0;  // +inf when hi_unbounded
  bool lo_unbounded = false;
  bool hi_unbounded = false;
};

/// Union of disjoint, ordered intervals over beta0 produced by test
/// inversion. May be empty (every grid point rejected) or unbounded on
/// either side.
struct ConfidenceSet {
  std::vector<ConfInterval> intervals;
  double level = 0.95;
  StatKind test_kind = StatKind::RCLR;
  GridSpec grid;

  bool empty() const { return intervals.empty(); }
  bool contains(double beta) const;
  /// Table-style notation: "[a, b]", "(-inf, a) U (b, inf)", "(empty)".
  std::string format(int precision = 4) const;
};

/// Invert run_test over the grid: fit once, evaluate the test at every grid
/// point and tail probe, merge accepted runs into intervals, refine each
/// finite boundary by 10 bisection steps between the last accepted and first
/// rejected point. An accepted extreme tail probe makes that end unbounded.
/// For RCLR one simulation draw set is shared by all grid points, so the
/// decision is a deterministic function of beta0 within the call.
ConfidenceSet invert_test(const Dataset& data, EstimatorKind estimator,
                          StatKind test_kind, double alpha,
                          const GridSpec& grid, int sims, RngStream& rng,
                          const HuberConfig& cfg = {});

/// Same inversion against an already fitted reduced form.
ConfidenceSet invert_test_fitted(const ReducedFormFit& fit, StatKind test_kind,
                                 double alpha, const GridSpec& grid, int sims,
                                 RngStream& rng);

}  // namespace riviv
