#ifndef ATOMDEC_LINEAR_OPERATOR_HPP
#define ATOMDEC_LINEAR_OPERATOR_HPP

#include <limits>

#include "atomdec/core.hpp"

namespace atomdec {

// 2-norm condition number sigma_max / sigma_min; infinity when singular.
inline Real condition_estimate(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0)
    return 1.0;
  const Real lo = s(s.size() - 1);
  if (!(lo > 0.0))
    return std::numeric_limits<Real>::infinity();
  return s(0) / lo;
}

// Dense operator on a finite coordinate representation.
struct LinearOperator {
  Matrix matrix;
  Real condition = 1.0;

  explicit LinearOperator(Matrix m) : matrix(std::move(m)), condition(condition_estimate(matrix)) {}

  Vector apply(const Vector& x) const { return matrix * x; }
  long rows() const { return matrix.rows(); }
  long cols() const { return matrix.cols(); }
};

} // namespace atomdec

#endif
