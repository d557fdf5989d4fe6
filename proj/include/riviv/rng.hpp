#pragma once

#include <cstdint>
#include <utility>

namespace riviv {

/// Reproducible random stream.
///
/// Algorithm (pinned so runs are bit-reproducible across platforms):
/// xoshiro256++ with state derived from (seed, stream) through SplitMix64,
/// normals via the Marsaglia polar method with one cached deviate.
/// Identical (seed, stream) pairs reproduce identical sequences; distinct
/// stream ids give statistically independent streams, one per Monte Carlo
/// replication.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();

  /// Uniform on [0, 1).
  double uniform();

  /// Uniform on (0, 1]; safe under log().
  double uniform_pos();

  /// Standard normal deviate.
  double normal();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t s_[4];
  std::uint64_t seed_;
  std::uint64_t stream_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

/// Chi-square draw with df >= 0 degrees of freedom; df = 0 is the point mass
/// at zero. Integer-shape gamma route: sum of df/2 exponentials plus one
/// squared normal when df is odd.
double chi2_sample(RngStream& rng, int df);

/// Mean-zero pair with unit variances and correlation rho, |rho| < 1.
std::pair<double, double> bivariate_normal(RngStream& rng, double rho);

/// Mean-zero bivariate t(3) pair: correlated normals scaled by sqrt(3 / s),
/// s ~ chi2(3) independent. Heavy-tailed, |rho| < 1.
std::pair<double, double> bivariate_t3(RngStream& rng, double rho);

}  // namespace riviv
