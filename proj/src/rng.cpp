#include "riviv/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace riviv {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

inline std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
  std::uint64_t x = seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1));
  for (auto& w : s_) w = splitmix64(x);
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // xoshiro needs nonzero state
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_pos() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_normal_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  cached_normal_ = v * f;
  has_cached_ = true;
  return u * f;
}

double chi2_sample(RngStream& rng, int df) {
  if (df < 0) throw std::domain_error("chi2_sample: df must be >= 0");
  if (df == 0) return 0.0;
  double acc = 0.0;
  for (int i = 0; i < df / 2; ++i) acc += -2.0 * std::log(rng.uniform_pos());
  if (df % 2 == 1) {
    const double z = rng.normal();
    acc += z * z;
  }
  return acc;
}

std::pair<double, double> bivariate_normal(RngStream& rng, double rho) {
  if (!(std::fabs(rho) < 1.0))
    throw std::domain_error("bivariate_normal: |rho| must be < 1");
  const double g1 = rng.normal();
  const double g2 = rng.normal();
  return {g1, rho * g1 + std::sqrt(1.0 - rho * rho) * g2};
}

std::pair<double, double> bivariate_t3(RngStream& rng, double rho) {
  const auto [g1, g2] = bivariate_normal(rng, rho);
  double s;
  do {
    s = chi2_sample(rng, 3);
  } while (s == 0.0);
  const double scale = std::sqrt(3.0 / s);
  return {g1 * scale, g2 * scale};
}

}  // namespace riviv
