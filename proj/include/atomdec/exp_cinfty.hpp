#ifndef ATOMDEC_EXP_CINFTY_HPP
#define ATOMDEC_EXP_CINFTY_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "atomdec/cutoff.hpp"
#include "atomdec/decomposition.hpp"

namespace atomdec {

enum class ExtensionBackend { caller_global, reflection };

std::string to_string(ExtensionBackend backend);
ExtensionBackend parse_backend(const std::string& name);

// Tf(M + s) = sum_k c_k f(M - b_k s) for s > 0 (mirrored at -M), with
// b_k = 2/(k+1), k = 0..order, and sum_k c_k (-b_k)^m = 1 for m = 0..order,
// so derivatives 0..order match across the endpoint.
struct ReflectionRule {
  int order = 0;
  RealVector scales;   // b_k
  RealVector weights;  // c_k
};

ReflectionRule reflection_rule(int order);

// [-2M, 2M)^dim with N nodes per axis, period 4M.
GridShape full_box(Real M, int dim, long N);
// [-M, M) with N/2 nodes (the K-part of the full box at the same spacing).
GridShape k_box(Real M, long N);

// Hf = phi * (extension of f). caller-global: f on the full box, used as is.
// reflection: f on K (k_box) or on the full box (only the K-part is read).
GridFunction extend(const GridFunction& f, ExtensionBackend backend, const CutoffFunction& cutoff,
                    int reflection_order = 8);

// a_j = (4M)^{-dim} * integral of Hf e^{-2 pi i x.j/(4M)}, from the discrete
// transform, for |j|_inf <= N/2 - 1 in shell order.
CoefficientSeq fourier_coeffs(const GridFunction& hf);

struct DecayRow {
  int m = 0;
  Real sup = 0.0;  // sup_j |a_j| |j|^m, with 0^0 = 1
};

struct DecayReport {
  std::vector<DecayRow> rows;
  Real slope = 0.0;  // least squares slope of log|a_j| against log|j|
  int fit_lo = 0;
  int fit_hi = 0;
  long fit_points = 0;
};

// Fit window: the top two octaves [J/4, J] of the index range.
DecayReport decay_report(const CoefficientSeq& alpha, int m_max);
DecayReport decay_report(const CoefficientSeq& alpha, int m_max, int fit_lo, int fit_hi);

struct ExpConfig {
  Real M = 1.0;
  int dim = 1;
  long N = 1024;
  int J = 64;
  Real rho = 0.1;
  ExtensionBackend backend = ExtensionBackend::caller_global;
  int reflection_order = 8;
  CutoffProfile profile{};
  int max_order = 8;  // largest derivative-sup order exposed
};

// Atoms e_j(x) = exp(2 pi i x.j/(4M)) sampled on the full box, duals
// u_j(f) = a_j(Hf). Elements are full-box sample vectors.
class ExpDecomposition final : public AtomicDecomposition {
public:
  explicit ExpDecomposition(ExpConfig config);

  std::string name() const override { return "exp-cinfty"; }
  std::shared_ptr<const IndexSet> index_ptr() const override { return indices_; }
  long dimension() const override;
  Vector atom(long k) const override { return atom_at((*indices_)[k]); }
  Vector analyze(const Vector& f) const override;
  Vector synthesize(const Vector& alpha, long count) const override;
  const SeminormFamily& seminorms() const override { return *seminorms_; }
  std::optional<GridShape> grid() const override { return full_box(config_.M, config_.dim, config_.N); }
  Vector analyze_grid(const GridFunction& f) const override;

  const ExpConfig& config() const { return config_; }
  const CutoffFunction& cutoff() const { return *cutoff_; }
  const DerivativeSup& derivative_sup() const { return *seminorms_; }
  Real frequency(int j) const { return Real(j) / (4.0 * config_.M); }

  Vector atom_at(const LatticeIndex& j) const;
  // Hf for full-box samples f.
  Vector extension(const Vector& f) const;
  // Fourier coefficients of Hf over all |j|_inf <= J, ignoring any removal.
  Vector base_analyze(const Vector& f) const;
  const IndexSet& base_indices() const { return *base_indices_; }

  std::optional<LatticeIndex> removed() const;
  // A f = f - u_{j0}(f) e_{j0} and its closed-form inverse; need a removal.
  Vector removal_apply(const Vector& f) const;
  Vector removal_inverse_apply(const Vector& f) const;
  // u_{j0}(e_{j0}) of the removal
  Scalar removal_self_value() const;

  // Same atoms minus e_{j0}, duals y_j' = u_j o A^{-1}. Throws GateRefusal
  // when |1 - u_{j0}(e_{j0})| <= 1e-6 and InputError for an unknown j0.
  ExpDecomposition without(const LatticeIndex& j0) const;

private:
  struct Removal {
    LatticeIndex j0;
    long base_position;
    Vector self_coefficients;  // u_j(e_{j0}) over the base indices
    Scalar denominator;        // 1 - u_{j0}(e_{j0})
  };

  const Removal& removal() const;
  // base coefficients -> coefficients of the (possibly reduced) index set
  Vector with_removal(Vector base) const;

  ExpConfig config_;
  std::shared_ptr<const CutoffFunction> cutoff_;
  std::shared_ptr<const IndexSet> base_indices_;
  std::shared_ptr<const IndexSet> indices_;
  std::shared_ptr<const DerivativeSup> seminorms_;
  std::shared_ptr<const Removal> removal_;
};

struct RemovalResult {
  ExpDecomposition decomposition;
  Scalar self_value;   // u_{j0}(e_{j0})
  Real margin = 0.0;   // |1 - u_{j0}(e_{j0})|
  int residual_order = 2;
  std::vector<Real> residual_before;  // per probe, q_order
  std::vector<Real> residual_after;
  bool within_factor = true;  // after <= 10 * before (+ 1e-12) on every probe
};

// ExpDecomposition::without plus reproduction residuals on the probes.
RemovalResult remove_atom(const ExpDecomposition& decomp, const LatticeIndex& j0,
                          const std::vector<Vector>& probes = {}, int residual_order = 2);

} // namespace atomdec

#endif
