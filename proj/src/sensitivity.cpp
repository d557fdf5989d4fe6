#include "riviv/sensitivity.hpp"

#include <cmath>
#include <string>

#include "riviv/errors.hpp"
#include "riviv/reduced_form.hpp"

namespace riviv {

Dataset contaminate_with_probe(const Dataset& base, const ProbePoint& probe,
                               int replicas) {
  if (probe.z.size() != base.Z.cols() ||
      probe.w.size() != base.W.cols())
    throw InputError("sensitivity: probe dimensions do not match the sample");
  const Eigen::Index n = base.n();
  Dataset out = base;
  out.y.conservativeResize(n + replicas);
  out.x.conservativeResize(n + replicas);
  out.Z.conservativeResize(n + replicas, Eigen::NoChange);
  if (base.W.cols() > 0) out.W.conservativeResize(n + replicas, Eigen::NoChange);
  for (int r = 0; r < replicas; ++r) {
    out.y[n + r] = probe.y;
    out.x[n + r] = probe.x;
    out.Z.row(n + r) = probe.z.transpose();
    if (base.W.cols() > 0) out.W.row(n + r) = probe.w.transpose();
  }
  return out;
}

std::vector<double> sensitivity_curve(EstimatorKind kind, const Dataset& base,
                                      const ProbePoint& probe,
                                      const std::vector<double>& t_values,
                                      const HuberConfig& cfg) {
  base.validate();
  const ReducedFormFit ref = fit_reduced_form(base, kind, cfg);

  std::vector<double> out;
  out.reserve(t_values.size());
  for (const double t : t_values) {
    if (!(t > 0.0 && t < 0.5))
      throw InputError("sensitivity: t must lie in (0, 0.5), got " +
                       std::to_string(t));
    const int replicas =
        static_cast<int>(std::ceil(t * static_cast<double>(base.n())));
    const Dataset cont = contaminate_with_probe(base, probe, replicas);
    const ReducedFormFit fit = fit_reduced_form(cont, kind, cfg);
    const double displacement =
        std::sqrt((fit.delta_hat - ref.delta_hat).squaredNorm() +
                  (fit.pi_hat - ref.pi_hat).squaredNorm());
    out.push_back(displacement / t);
  }
  return out;
}

}  // namespace riviv
