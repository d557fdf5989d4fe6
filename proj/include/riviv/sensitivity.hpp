#pragma once

#include <vector>

#include "riviv/dataset.hpp"
#include "riviv/regression.hpp"

namespace riviv {

/// One contamination point: a full observation (y, x, z, w).
struct ProbePoint {
  double y = 0.0;
  double x = 0.0;
  Vec z;
  Vec w;  // empty when the dataset has no controls
};

/// Empirical sensitivity curve: for each contamination fraction t in
/// (0, 0.5), append ceil(t * n) copies of the probe to the base sample,
/// refit, and report ||instrument-block coefficient displacement|| / t over
/// the stacked (delta, pi) blocks. The finite-t analogue of the influence
/// function; bounded for the Mallows fit, unbounded in the probe for LS.
std::vector<double> sensitivity_curve(EstimatorKind kind, const Dataset& base,
                                      const ProbePoint& probe,
                                      const std::vector<double>& t_values,
                                      const HuberConfig& cfg = {});

/// Contaminated copy of the sample with m probe replicas appended.
Dataset contaminate_with_probe(const Dataset& base, const ProbePoint& probe,
                               int replicas);

}  // namespace riviv
