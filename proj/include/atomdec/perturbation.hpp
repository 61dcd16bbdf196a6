#ifndef ATOMDEC_PERTURBATION_HPP
#define ATOMDEC_PERTURBATION_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "atomdec/decomposition.hpp"

namespace atomdec {

using OperatorFn = std::function<Vector(const Vector&)>;

struct ContractionEstimate {
  int p0 = 0;
  std::vector<Real> constants;  // C_p = max over probes of p(Tx) / p0(x), p = 0..max_order
  Real c = 0.0;                 // C_{p0}
  Real margin = 1e-2;
  bool contraction = false;     // c < 1 - margin
  bool hypothesis_violation = false;  // some probe has p0(x) = 0 but p(Tx) > 0
  long probes = 0;
};

ContractionEstimate contraction_estimate(const OperatorFn& T, const SeminormFamily& family, int p0,
                                         const std::vector<Vector>& probes, int max_order,
                                         Real margin = 1e-2);

// Smallest K with c^{K+1} / (1 - c) <= tol.
int neumann_depth(Real c, Real tol);

// (I - T)^{-1} x ~ sum_{k=0}^{K} T^k x
class NeumannInverse {
public:
  NeumannInverse(OperatorFn T, Real c, int depth);

  Real contraction() const { return c_; }
  int depth() const { return depth_; }
  Real residual_bound() const;
  Vector apply(const Vector& x) const;
  const OperatorFn& op() const { return T_; }

private:
  OperatorFn T_;
  Real c_;
  int depth_;
};

// Throws GateRefusal when c >= 1 and InputError when tol <= 0.
NeumannInverse neumann_invert(OperatorFn T, Real c, Real tol);

enum class PerturbMode { atoms, duals };

std::string to_string(PerturbMode mode);

// Replacements for the first `count` members of the base enumeration:
//   atoms: shift is dim x count, y_k = x_k + shift.col(k)
//   duals: shift is count x dim, y_k'(x) = x_k'(x) + (shift * x)(k)
struct PerturbationProblem {
  std::shared_ptr<const AtomicDecomposition> base;
  PerturbMode mode = PerturbMode::atoms;
  Matrix shift;
  int p0 = 0;
  std::vector<Vector> probes;
};

// T of the problem: atoms, T x = sum_k x_k'(x)(x_k - y_k); duals, T x = sum_k (x_k' - y_k')(x) x_k.
OperatorFn perturbation_operator(const PerturbationProblem& problem);

// The new system ({y_j'}, {y_j}).
class PerturbedDecomposition final : public AtomicDecomposition {
public:
  PerturbedDecomposition(PerturbationProblem problem, NeumannInverse inverse);

  std::string name() const override { return problem_.base->name() + "+perturbed-" + to_string(problem_.mode); }
  std::shared_ptr<const IndexSet> index_ptr() const override { return problem_.base->index_ptr(); }
  long dimension() const override { return problem_.base->dimension(); }
  Vector atom(long k) const override;
  Vector analyze(const Vector& f) const override;
  const SeminormFamily& seminorms() const override { return problem_.base->seminorms(); }
  std::optional<GridShape> grid() const override { return problem_.base->grid(); }
  std::vector<int> default_ngrid() const override { return problem_.base->default_ngrid(); }

  const NeumannInverse& inverse() const { return inverse_; }
  const PerturbationProblem& problem() const { return problem_; }

private:
  PerturbationProblem problem_;
  NeumannInverse inverse_;
};

struct PerturbationOutcome {
  std::shared_ptr<const PerturbedDecomposition> decomposition;
  ContractionEstimate gate;
  int depth = 0;
  Real residual_bound = 0.0;
  // max over probes of sum_k |x_k'(x)| p0(x_k - y_k) (atoms) or sum_k |(x_k' - y_k')(x)| p0(x_k) (duals)
  Real summability_proxy = 0.0;
};

// Both throw GateRefusal when the contraction gate fails on the probes and
// InputError when the problem's mode or shapes do not fit.
PerturbationOutcome perturb_atoms(const PerturbationProblem& problem, Real tol = 1e-8, int max_order = 3);
PerturbationOutcome perturb_duals(const PerturbationProblem& problem, Real tol = 1e-8, int max_order = 3);
PerturbationOutcome perturb(const PerturbationProblem& problem, Real tol = 1e-8, int max_order = 3);

// 1 / (1 + j^2 p_j(x_j) + 3^j p_1(x_j)), j counted from 1.
Real corollary_threshold(int j, Real pj_of_xj, Real p1_of_xj);

struct GapRow {
  int j = 0;  // 1-based enumeration position
  LatticeIndex index{};
  Real pj = 0.0;  // p_j(x_j) = q_{j-1}(x_j)
  Real p1 = 0.0;  // p_1(x_j) = q_0(x_j)
  Real threshold = 0.0;
  Real gap = 0.0;  // dictionary estimate of p_1^*(x_j' - y_j')
  bool pass = true;
};

// Elements of the form sum_k c_k x_k with p(d) = 1: the first atoms on their
// own, then seeded random combinations of the leading atoms.
std::vector<Vector> normalized_dictionary(const AtomicDecomposition& base, int order, long size,
                                          std::uint64_t seed = default_seed);

// One row per position j = 1..count; the family member j - 1 plays the role of p_j.
std::vector<GapRow> corollary_gap_check(const AtomicDecomposition& base, const AtomicDecomposition& perturbed,
                                        long count, const std::vector<Vector>& dictionary);

// Dual noise of the corollary's size: y_j' = x_j' + eta_j delta_{t_j} for the
// first `count` positions, |eta_j| = fraction * threshold_j, t_j a node in K.
// Only for decompositions whose p_1 is a sup over the nodes `nodes`.
Matrix corollary_dual_noise(const AtomicDecomposition& base, long count, const std::vector<long>& nodes,
                            Real fraction = 0.5, std::uint64_t seed = default_seed);
// Atom noise y_j = (1 + eta_j) x_j with |eta_j| = fraction * threshold_j.
Matrix corollary_atom_noise(const AtomicDecomposition& base, long count, Real fraction = 0.5,
                            std::uint64_t seed = default_seed);

} // namespace atomdec

#endif
