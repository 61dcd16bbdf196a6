#ifndef ATOMDEC_DIAGNOSTICS_HPP
#define ATOMDEC_DIAGNOSTICS_HPP

#include <functional>
#include <string>
#include <vector>

#include "atomdec/decomposition.hpp"

namespace atomdec {

// A test functional x' on the decomposition's coordinate vectors.
struct Functional {
  std::string id;
  std::function<Scalar(const Vector&)> apply;
};

// Elements with a declared bound p_order(f) <= bound, and the functionals to test with.
struct ProbeSet {
  std::vector<Vector> elements;
  std::vector<Functional> functionals;
  int bound_order = 0;
  Real bound = 0.0;
};

// Highest p_order over the elements; a set is certified when it is <= bound.
Real probe_level(const AtomicDecomposition& decomp, const ProbeSet& probes);
bool certified(const AtomicDecomposition& decomp, const ProbeSet& probes);

// Declares bound = 1.01 * the measured level.
ProbeSet make_probe_set(const AtomicDecomposition& decomp, std::vector<Vector> elements,
                        std::vector<Functional> functionals, int bound_order = 0);

// Point and first-derivative evaluations (and lattice coefficients for Gabor)
// matched to the decomposition's representation.
std::vector<Functional> default_functionals(const AtomicDecomposition& decomp);

// T_n f = sum over n < |j| <= J of x_j'(f) x_j. n = J gives 0; n > J or n < 0 is rejected.
Vector tail_apply(const AtomicDecomposition& decomp, int n, const Vector& f);

struct Curve {
  std::string id;
  std::vector<Real> values;  // one per grid point
};

struct ShrinkingReport {
  std::vector<int> ngrid;
  std::vector<Curve> curves;
  // every curve ends at most a tenth of where it starts (or is identically 0 at both ends)
  bool consistent = true;
  // min over curves of first / last (infinite when a curve ends at 0)
  Real min_decrease = 0.0;
};

// sup over probe elements of |x'(T_n f)| per functional and grid point.
ShrinkingReport shrinking_curve(const AtomicDecomposition& decomp, const ProbeSet& probes,
                                const std::vector<int>& ngrid);

struct IncrementSeries {
  int order = 0;
  std::vector<Real> increments;  // p_order(sum_{n_i < |j| <= n_{i+1}} c_j x_j)
  bool consistent = true;
};

struct BoundedCompletenessReport {
  std::vector<int> ngrid;
  std::vector<IncrementSeries> series;
  // every order's increments decrease strictly from the second grid point on (or vanish)
  bool consistent = true;
};

BoundedCompletenessReport boundedly_complete_probe(const AtomicDecomposition& decomp, const CoefficientSeq& c,
                                                   const std::vector<int>& ngrid, const std::vector<int>& orders);

// Default grid intersected with the truncation, validated increasing.
std::vector<int> resolve_ngrid(const AtomicDecomposition& decomp, std::vector<int> requested);

} // namespace atomdec

#endif
