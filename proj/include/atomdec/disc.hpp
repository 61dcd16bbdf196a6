#ifndef ATOMDEC_DISC_HPP
#define ATOMDEC_DISC_HPP

#include <memory>
#include <optional>
#include <vector>

#include "atomdec/decomposition.hpp"
#include "atomdec/linear_operator.hpp"

namespace atomdec {

// Sector count of annulus k: max(min_sectors, multiplier * 2^k), or a
// constant count when set. `rotation` offsets every sector by that fraction
// of its angular width.
struct AngularLaw {
  int multiplier = 8;
  int min_sectors = 8;
  std::optional<int> constant;
  Real rotation = 0.0;

  int sectors(int annulus) const;
};

struct DiscCell {
  int annulus = 0;
  Real r_inner = 0.0;
  Real r_outer = 0.0;
  Real theta_begin = 0.0;
  Real theta_end = 0.0;
  Real area = 0.0;
  Scalar point;  // sample lambda_j
};

// Annuli [r_k, r_{k+1}) with r_k = 1 - 2^{-k}, k = 0..K-1, plus the remainder
// ring [r_K, 1) split like annulus K. Samples are area centroids; a sector too
// wide for its centroid to be interior (a half ring, say) uses its polar midpoint.
class DiscPartition {
public:
  DiscPartition(int depth, AngularLaw law);

  int depth() const { return depth_; }
  const AngularLaw& law() const { return law_; }
  const std::vector<DiscCell>& cells() const { return cells_; }
  long size() const { return long(cells_.size()); }
  // Number of cells in annuli 0..k (k = depth is the remainder ring).
  long cells_through(int k) const { return ends_[std::size_t(k)]; }
  Real total_area() const;
  std::vector<Real> areas() const;
  std::vector<Scalar> points() const;
  // max over cells of diam(D_j) / (1 - |lambda_j|)
  Real max_relative_diameter() const;

private:
  int depth_;
  AngularLaw law_;
  std::vector<DiscCell> cells_;
  std::vector<long> ends_;
};

DiscPartition build_partition(int K, AngularLaw law = {});

// (Sf)_n = sum_j (n+1) m_j conj(lambda_j)^n f(lambda_j) on Taylor coefficients
// c_0..c_N, i.e. the matrix A B with A_{n,j} = (n+1) m_j conj(lambda_j)^n and
// B_{j,m} = lambda_j^m.
LinearOperator s_operator(const DiscPartition& part, int N);
LinearOperator s_operator(const std::vector<Real>& areas, const std::vector<Scalar>& points, int N);

Scalar taylor_eval(const Vector& c, Scalar z);

// v_n(z) = min{1, |log(1 - |z|)|^{-n}}: 1 for n = 0 or |log(1 - r)| < 1.
Real disc_weight(Real r, int n);

struct PolarGrid {
  RealVector radii;
  int angles = 128;

  // 64 uniform radii on [0, 1/2) and 1 - 2^{-s}, s = 1, 17/16, ..., boundary_exponent.
  static PolarGrid standard(int boundary_exponent = 10, int angles = 128);
};

template <class F>
Real weighted_sup(F&& f, int n, const PolarGrid& grid) {
  Real best = 0.0;
  for (long i = 0; i < grid.radii.size(); ++i) {
    const Real r = grid.radii(i);
    const Real w = disc_weight(r, n);
    for (int k = 0; k < grid.angles; ++k) {
      const Scalar z = std::polar(r, two_pi * Real(k) / Real(grid.angles));
      best = std::max(best, std::abs(Scalar(f(z))) * w);
    }
  }
  return best;
}

// sup over the grid of |f(z)| v_n(z) for f given by Taylor coefficients.
Real weighted_norm(const Vector& taylor, int n, const PolarGrid& grid);

// Norms ||.||_{v_n}; decreasing in n since v_{n+1} <= v_n.
class WeightedDiscSup final : public SeminormFamily {
public:
  explicit WeightedDiscSup(PolarGrid grid, int max_order = 8);

  SeminormKind kind() const override { return SeminormKind::weighted_disc_sup; }
  int max_order() const override { return max_order_; }
  Real evaluate(const Vector& f, int n) const override;
  std::vector<Real> evaluate_upto(const Vector& f, int n_max) const override;
  bool increasing() const override { return false; }

  const PolarGrid& grid() const { return grid_; }

private:
  PolarGrid grid_;
  int max_order_;
};

// Atoms f_j(z) = m_j / (1 - conj(lambda_j) z)^2 and duals u_j(f) = (S^{-1} f)(lambda_j)
// on Taylor coefficients c_0..c_N. Cells are enumerated 1, 2, ... in partition order.
class DiscDecomposition final : public AtomicDecomposition {
public:
  // Throws GateRefusal when the condition estimate of S exceeds `condition_gate`.
  DiscDecomposition(DiscPartition part, int N, PolarGrid grid = PolarGrid::standard(), int max_order = 8,
                    Real condition_gate = 1e8);

  std::string name() const override { return "disc-hv"; }
  std::shared_ptr<const IndexSet> index_ptr() const override { return indices_; }
  long dimension() const override { return N_ + 1; }
  Vector atom(long k) const override;
  Vector analyze(const Vector& f) const override;
  Vector synthesize(const Vector& alpha, long count) const override;
  const SeminormFamily& seminorms() const override { return *seminorms_; }
  std::vector<int> default_ngrid() const override;

  const DiscPartition& partition() const { return *part_; }
  const LinearOperator& s() const { return *s_; }
  Real condition() const { return s_->condition; }
  int order() const { return N_; }

private:
  std::shared_ptr<const DiscPartition> part_;
  int N_;
  std::shared_ptr<const LinearOperator> s_;
  std::shared_ptr<const Eigen::PartialPivLU<Matrix>> lu_;
  std::shared_ptr<const IndexSet> indices_;
  std::shared_ptr<const WeightedDiscSup> seminorms_;
};

} // namespace atomdec

#endif
