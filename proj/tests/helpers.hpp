#pragma once

#include <cmath>

#include "qdisc/qstate.hpp"

namespace testing {

inline qdisc::PureState bell() {
  qdisc::ComplexVector v = qdisc::ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return qdisc::PureState({2, 2}, v);
}

inline qdisc::PureState schmidt(double alpha_sq) {
  qdisc::ComplexVector v = qdisc::ComplexVector::Zero(4);
  v(0) = std::sqrt(alpha_sq);
  v(3) = std::sqrt(1.0 - alpha_sq);
  return qdisc::PureState({2, 2}, v);
}

inline qdisc::DensityMatrix diag_state(const qdisc::Dims& dims, const std::vector<double>& d) {
  qdisc::ComplexMatrix m = qdisc::ComplexMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
  return qdisc::DensityMatrix(dims, m);
}

}  // namespace testing
