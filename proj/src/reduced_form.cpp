#include "riviv/reduced_form.hpp"

namespace riviv {

ReducedFormFit fit_reduced_form(const Dataset& data, EstimatorKind method,
                                const HuberConfig& cfg) {
  data.validate();
  const Mat design = data.design();
  const int k = data.k();

  ReducedFormFit rf;
  rf.n = data.n();
  rf.k = k;
  rf.method = method;
  if (method == EstimatorKind::LS) {
    rf.fit_y = fit_ls(data.y, design);
    rf.fit_x = fit_ls(data.x, design);
    rf.cov = cov_blocks_ls(rf.fit_y, rf.fit_x, design, k);
  } else {
    rf.fit_y = fit_mallows_huber(data.y, design, cfg);
    rf.fit_x = fit_mallows_huber(data.x, design, cfg);
    rf.cov = cov_blocks_mallows(rf.fit_y, rf.fit_x, design, k, cfg);
  }
  rf.delta_hat = rf.fit_y.coef.tail(k);
  rf.pi_hat = rf.fit_x.coef.tail(k);
  return rf;
}

}  // namespace riviv
