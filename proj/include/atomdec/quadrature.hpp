#ifndef ATOMDEC_QUADRATURE_HPP
#define ATOMDEC_QUADRATURE_HPP

#include "atomdec/core.hpp"

namespace atomdec {

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  RealVector nodes;
  RealVector weights;
};

// Golub-Welsch: eigenvalues of the symmetric Jacobi matrix of the Legendre
// recurrence are the nodes, squared first eigenvector components give weights.
GaussRule gauss_legendre(int n);

// Composite rule on [a, b] with `panels` equal panels.
template <class F>
Real integrate(F&& f, Real a, Real b, const GaussRule& rule, int panels) {
  const Real width = (b - a) / Real(panels);
  Real total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const Real lo = a + width * Real(p);
    const Real mid = lo + 0.5 * width;
    Real s = 0.0;
    for (long i = 0; i < rule.nodes.size(); ++i)
      s += rule.weights(i) * f(mid + 0.5 * width * rule.nodes(i));
    total += 0.5 * width * s;
  }
  return total;
}

} // namespace atomdec

#endif
