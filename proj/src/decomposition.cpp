#include "atomdec/decomposition.hpp"

#include <algorithm>
#include <random>

namespace atomdec {

Vector AtomicDecomposition::synthesize(const Vector& alpha, long count) const {
  Vector out = Vector::Zero(dimension());
  for (long k = 0; k < count; ++k)
    if (alpha(k) != Scalar(0.0))
      out += alpha(k) * atom(k);
  return out;
}

Vector AtomicDecomposition::analyze_grid(const GridFunction& f) const {
  const auto g = grid();
  if (!g || !(f.shape() == *g))
    throw InputError(name() + ": grid function does not match the decomposition's domain");
  return analyze(f.samples());
}

std::vector<int> AtomicDecomposition::default_ngrid() const {
  std::vector<int> out;
  for (int n : {8, 16, 32, 64})
    if (n <= truncation())
      out.push_back(n);
  return out;
}

CoefficientSeq analyze(const AtomicDecomposition& decomp, const Vector& f) {
  if (f.size() != decomp.dimension())
    throw InputError(decomp.name() + ": element has the wrong coordinate length");
  return CoefficientSeq(decomp.index_ptr(), decomp.analyze(f));
}

CoefficientSeq analyze(const AtomicDecomposition& decomp, const GridFunction& f) {
  return CoefficientSeq(decomp.index_ptr(), decomp.analyze_grid(f));
}

Vector embed(const AtomicDecomposition& decomp, const CoefficientSeq& alpha) {
  if (alpha.index_ptr() == decomp.index_ptr() || alpha.indices() == decomp.indices())
    return alpha.values();
  Vector full = Vector::Zero(decomp.size());
  for (long k = 0; k < alpha.size(); ++k) {
    const long pos = decomp.indices().position(alpha.indices()[k]);
    if (pos < 0)
      throw InputError(decomp.name() + ": coefficient index not in the decomposition");
    full(pos) = alpha[k];
  }
  return full;
}

Vector synthesize(const AtomicDecomposition& decomp, const CoefficientSeq& alpha, int order) {
  if (order < 0)
    throw InputError("negative synthesis order");
  if (order > alpha.indices().max_magnitude())
    throw InputError("synthesis order " + std::to_string(order) + " exceeds available coefficients (" +
                     std::to_string(alpha.indices().max_magnitude()) + ")");
  const Vector full = embed(decomp, alpha);
  return decomp.synthesize(full, decomp.indices().count_within(order));
}

GridFunction synthesize_grid(const AtomicDecomposition& decomp, const CoefficientSeq& alpha, int order) {
  const auto g = decomp.grid();
  if (!g)
    throw InputError(decomp.name() + ": elements are not grid functions");
  return GridFunction(*g, synthesize(decomp, alpha, order));
}

Real partial_sum_seminorm(const AtomicDecomposition& decomp, const CoefficientSeq& alpha, int n, long terms) {
  const Vector full = embed(decomp, alpha);
  if (terms < 0 || terms > decomp.size())
    throw InputError("partial_sum_seminorm: term count outside the truncation");
  const auto& p = decomp.seminorms();
  if (n < 0 || n > p.max_order())
    throw InputError("seminorm order out of range");
  Vector partial = Vector::Zero(decomp.dimension());
  Real best = 0.0;
  for (long k = 0; k < terms; ++k) {
    if (full(k) == Scalar(0.0))
      continue;  // the partial sum did not change
    partial += full(k) * decomp.atom(k);
    best = std::max(best, p.evaluate(partial, n));
  }
  return best;
}

UnconditionalEstimate unconditional_seminorm_estimate(const AtomicDecomposition& decomp,
                                                      const CoefficientSeq& alpha, int n, long samples,
                                                      std::uint64_t seed) {
  if (samples < 1)
    throw InputError("unconditional estimate needs at least one sample");
  const auto& p = decomp.seminorms();
  if (n < 0 || n > p.max_order())
    throw InputError("seminorm order out of range");
  const Vector full = embed(decomp, alpha);
  std::vector<long> support;
  for (long k = 0; k < full.size(); ++k)
    if (full(k) != Scalar(0.0))
      support.push_back(k);

  UnconditionalEstimate est;
  est.seed = seed;
  est.samples = samples;
  if (support.empty())
    return est;

  Matrix terms(decomp.dimension(), long(support.size()));
  for (std::size_t i = 0; i < support.size(); ++i) {
    const Vector x = decomp.atom(support[i]);
    terms.col(long(i)) = full(support[i]) * x;
    est.upper += std::abs(full(support[i])) * p.evaluate(x, n);
  }

  std::mt19937_64 rng(seed);
  Eigen::VectorXd signs = Eigen::VectorXd::Ones(long(support.size()));
  for (long s = 0; s < samples; ++s) {
    if (s > 0)
      for (long i = 0; i < signs.size(); ++i)
        signs(i) = (rng() >> 63) ? 1.0 : -1.0;
    const Vector sum = terms * signs.cast<Scalar>();
    est.lower = std::max(est.lower, p.evaluate(sum, n));
  }
  return est;
}

std::vector<Real> reproduction_residuals(const AtomicDecomposition& decomp, const Vector& f, int n_max,
                                         int order) {
  const Vector alpha = decomp.analyze(f);
  const Vector approx = decomp.synthesize(alpha, decomp.indices().count_within(order));
  return decomp.seminorms().evaluate_upto(f - approx, n_max);
}

Real reproduction_residual(const AtomicDecomposition& decomp, const Vector& f, int n, int order) {
  return reproduction_residuals(decomp, f, n, order).back();
}

} // namespace atomdec
