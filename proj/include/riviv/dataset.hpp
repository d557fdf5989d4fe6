#pragma once

#include "riviv/linalg.hpp"

namespace riviv {

/// One IV sample: outcome y, endogenous regressor x, instruments Z (n x k)
/// and controls W (n x p, possibly empty). When include_intercept is set the
/// fitting design gains a leading column of ones.
struct Dataset {
  Vec y;
  Vec x;
  Mat Z;
  Mat W;
  bool include_intercept = true;

  Eigen::Index n() const { return y.size(); }
  int k() const { return static_cast<int>(Z.cols()); }
  int n_controls() const {
    return static_cast<int>(W.cols()) + (include_intercept ? 1 : 0);
  }

  /// Throws InputError on shape mismatch or non-finite entries.
  void validate() const;

  /// Fitting design: [1 | W | Z], controls first, instruments last.
  Mat design() const;
};

}  // namespace riviv
