#include "atomdec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace atomdec {

GaussRule gauss_legendre(int n) {
  if (n < 1)
    throw InputError("Gauss rule needs at least one node");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double off = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = off;
    jacobi(k - 1, k) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  GaussRule rule{eig.eigenvalues(), RealVector(n)};
  for (int k = 0; k < n; ++k)
    rule.weights(k) = 2.0 * eig.eigenvectors()(0, k) * eig.eigenvectors()(0, k);
  // symmetrize away the eigensolver's last-bit noise
  for (int k = 0; k < n / 2; ++k) {
    const double x = 0.5 * (rule.nodes(n - 1 - k) - rule.nodes(k));
    const double w = 0.5 * (rule.weights(n - 1 - k) + rule.weights(k));
    rule.nodes(k) = -x;
    rule.nodes(n - 1 - k) = x;
    rule.weights(k) = w;
    rule.weights(n - 1 - k) = w;
  }
  if (n % 2 == 1)
    rule.nodes(n / 2) = 0.0;
  return rule;
}

} // namespace atomdec
