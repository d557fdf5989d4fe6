#include "riviv/robust.hpp"

#include <algorithm>
#include <vector>

#include "riviv/errors.hpp"

namespace riviv {

namespace {

double median_inplace(std::vector<double>& v) {
  const std::size_t n = v.size();
  const std::size_t mid = n / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  const double upper = v[mid];
  if (n % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + mid);
  return 0.5 * (lower + upper);
}

}  // namespace

double median(const Vec& xs) {
  if (xs.size() == 0) throw InputError("median: empty input");
  std::vector<double> v(xs.data(), xs.data() + xs.size());
  return median_inplace(v);
}

double mad(const Vec& xs) {
  if (xs.size() == 0) throw InputError("mad: empty input");
  const double m = median(xs);
  std::vector<double> v(xs.size());
  for (Eigen::Index i = 0; i < xs.size(); ++i) v[i] = std::fabs(xs[i] - m);
  return median_inplace(v);
}

}  // namespace riviv
