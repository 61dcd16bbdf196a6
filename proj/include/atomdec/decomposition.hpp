#ifndef ATOMDEC_DECOMPOSITION_HPP
#define ATOMDEC_DECOMPOSITION_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "atomdec/coefficients.hpp"
#include "atomdec/grid_function.hpp"
#include "atomdec/seminorm.hpp"

namespace atomdec {

// A truncated atomic decomposition: atoms x_j and dual functionals x_j'
// over a common enumerated index set. Elements of the space are coordinate
// vectors of a fixed representation (grid samples or Taylor coefficients).
class AtomicDecomposition {
public:
  virtual ~AtomicDecomposition() = default;

  virtual std::string name() const = 0;
  virtual std::shared_ptr<const IndexSet> index_ptr() const = 0;
  const IndexSet& indices() const { return *index_ptr(); }
  long size() const { return indices().size(); }
  // Largest index magnitude realized.
  int truncation() const { return indices().max_magnitude(); }

  // Length of the coordinate vectors.
  virtual long dimension() const = 0;
  virtual Vector atom(long k) const = 0;
  // (x_j'(f))_j in enumeration order.
  virtual Vector analyze(const Vector& f) const = 0;
  // sum_{k < count} alpha_k x_k
  virtual Vector synthesize(const Vector& alpha, long count) const;

  virtual const SeminormFamily& seminorms() const = 0;
  // Set when elements are samples on a grid.
  virtual std::optional<GridShape> grid() const { return std::nullopt; }
  // Accepts a grid function in any representation the duals understand.
  virtual Vector analyze_grid(const GridFunction& f) const;

  // Default n-grid for tail diagnostics.
  virtual std::vector<int> default_ngrid() const;
};

CoefficientSeq analyze(const AtomicDecomposition& decomp, const Vector& f);
CoefficientSeq analyze(const AtomicDecomposition& decomp, const GridFunction& f);

// Partial sum over |j| <= order. Throws if order exceeds the coefficients
// supplied or alpha carries indices the decomposition does not have.
Vector synthesize(const AtomicDecomposition& decomp, const CoefficientSeq& alpha, int order);
GridFunction synthesize_grid(const AtomicDecomposition& decomp, const CoefficientSeq& alpha, int order);

// Coefficient vector over the decomposition's enumeration (zeros where alpha is silent).
Vector embed(const AtomicDecomposition& decomp, const CoefficientSeq& alpha);

// sup_{m <= terms} p_n(sum_{k < m} alpha_k x_k), terms counted in enumeration order.
Real partial_sum_seminorm(const AtomicDecomposition& decomp, const CoefficientSeq& alpha, int n, long terms);

struct UnconditionalEstimate {
  Real lower = 0.0;
  Real upper = 0.0;
  std::uint64_t seed = default_seed;
  long samples = 0;
};

// lower: max of p_n(sum b_j alpha_j x_j) over `samples` sign vectors, the
// all-ones vector first; upper: sum |alpha_j| p_n(x_j).
UnconditionalEstimate unconditional_seminorm_estimate(const AtomicDecomposition& decomp,
                                                      const CoefficientSeq& alpha, int n, long samples,
                                                      std::uint64_t seed = default_seed);

// p_n(f - sum_{|j| <= order} x_j'(f) x_j)
Real reproduction_residual(const AtomicDecomposition& decomp, const Vector& f, int n, int order);
std::vector<Real> reproduction_residuals(const AtomicDecomposition& decomp, const Vector& f, int n_max, int order);

} // namespace atomdec

#endif
