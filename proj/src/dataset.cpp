#include "riviv/dataset.hpp"

#include <string>

#include "riviv/errors.hpp"

namespace riviv {

void Dataset::validate() const {
  const Eigen::Index nobs = y.size();
  if (nobs == 0) throw InputError("dataset: empty sample");
  if (x.size() != nobs || Z.rows() != nobs ||
      (W.cols() > 0 && W.rows() != nobs))
    throw InputError("dataset: y, x, Z, W row counts disagree");
  if (Z.cols() < 1) throw InputError("dataset: at least one instrument required");
  if (!y.allFinite() || !x.allFinite() || !Z.allFinite() ||
      (W.size() > 0 && !W.allFinite()))
    throw InputError("dataset: non-finite entries");
}

Mat Dataset::design() const {
  const Eigen::Index nobs = y.size();
  const Eigen::Index p = n_controls();
  Mat d(nobs, p + Z.cols());
  Eigen::Index col = 0;
  if (include_intercept) d.col(col++).setOnes();
  if (W.cols() > 0) {
    d.middleCols(col, W.cols()) = W;
    col += W.cols();
  }
  d.rightCols(Z.cols()) = Z;
  return d;
}

}  // namespace riviv
