#ifndef ATOMDEC_GABOR_HPP
#define ATOMDEC_GABOR_HPP

#include <memory>
#include <vector>

#include "atomdec/decomposition.hpp"

namespace atomdec {

// Time-frequency shift on Z_L: (pi(x, xi) f)(t) = e^{2 pi i xi t / L} f(t - x).
Vector tf_shift(const Vector& f, long x, long xi);

// Representative of t mod L in [-L/2, L/2).
inline long wrap_symmetric(long t, long L) {
  const long r = ((t % L) + L) % L;
  return r >= L / 2 ? r - L : r;
}

// |z|_phys = sqrt(x_s^2 + xi_s^2) / sqrt(L) with symmetric representatives.
Real phys_norm(long x, long xi, long L);
// v_n(z) = (1 + |z|_phys)^n
Real tf_weight(long x, long xi, long L, int n);

// Periodized Gaussian exp(-pi t^2 / L) on Z_L, normalized in l2.
Vector gaussian_window(long L);
// Unit impulse at t = 0.
Vector impulse_window(long L);

// Lattice aZ x bZ in Z_L x Z_L with a window of unit l2 norm. Lattice points
// are indexed by (k, l), x = k a, xi = l b, with k and l taken symmetric
// about 0 so that shells grow away from the origin.
class GaborSystem {
public:
  GaborSystem(long L, long a, long b, Vector window);

  long L() const { return L_; }
  long a() const { return a_; }
  long b() const { return b_; }
  const Vector& window() const { return g_; }
  Real redundancy() const { return Real(L_) / Real(a_ * b_); }

  std::shared_ptr<const IndexSet> lattice_ptr() const { return lattice_; }
  const IndexSet& lattice() const { return *lattice_; }
  long lattice_size() const { return lattice_->size(); }
  // (x, xi) of the k-th lattice point, both reduced mod L
  std::array<long, 2> point(long k) const;

private:
  long L_, a_, b_;
  Vector g_;
  std::shared_ptr<const IndexSet> lattice_;
};

// S f = sum_lambda <f, pi(lambda) g> pi(lambda) g as a dense L x L matrix,
// assembled from the Walnut structure: S(t, s) = (L/b) sum_k g(t - ka) conj(g(s - ka))
// when t = s mod L/b, and 0 otherwise.
Matrix frame_operator(const GaborSystem& sys);

// Columns pi(lambda) g in lattice order (L x lattice_size).
Matrix synthesis_matrix(const GaborSystem& sys, const Vector& window);

struct FrameBounds {
  Real A = 0.0;
  Real B = 0.0;
};

// Extreme eigenvalues of S from its L/b diagonal blocks of size b.
FrameBounds frame_bounds(const GaborSystem& sys);

// h = S^{-1} g. Throws GateRefusal (not a frame) when A <= 1e-10.
Vector dual_window(const GaborSystem& sys);

// <f, pi(lambda) g> over the lattice.
CoefficientSeq gabor_analyze(const GaborSystem& sys, const Vector& f);
// sum_lambda c_lambda pi(lambda) h; the coefficients must cover the lattice.
Vector gabor_reconstruct(const GaborSystem& sys, const CoefficientSeq& coeffs, const Vector& h);

// V_g f(x, xi) = <f, pi(x, xi) g> on all of Z_L x Z_L, row x, column xi.
Matrix stft(const Vector& f, const Vector& g);

// q_n(f) = max over Z_L x Z_L of |V_g f(z)| v_n(z), n = 0..max_order.
class StftSeminorm final : public SeminormFamily {
public:
  StftSeminorm(Vector window, int max_order = 8);

  SeminormKind kind() const override { return SeminormKind::weighted_stft; }
  int max_order() const override { return max_order_; }
  Real evaluate(const Vector& f, int n) const override;
  std::vector<Real> evaluate_upto(const Vector& f, int n_max) const override;

  const Vector& window() const { return g_; }

private:
  Vector g_;
  int max_order_;
};

Real stft_seminorm(const GaborSystem& sys, const Vector& f, int n);

// Atoms pi(lambda) h, duals <., pi(lambda) g>, on the cyclic grid Z_L.
class GaborDecomposition final : public AtomicDecomposition {
public:
  explicit GaborDecomposition(GaborSystem sys);
  GaborDecomposition(GaborSystem sys, Vector dual);

  std::string name() const override { return "gabor"; }
  std::shared_ptr<const IndexSet> index_ptr() const override { return sys_.lattice_ptr(); }
  long dimension() const override { return sys_.L(); }
  Vector atom(long k) const override;
  Vector analyze(const Vector& f) const override;
  const SeminormFamily& seminorms() const override { return *seminorms_; }
  std::optional<GridShape> grid() const override { return GridShape::cyclic(sys_.L()); }
  std::vector<int> default_ngrid() const override;

  const GaborSystem& system() const { return sys_; }
  const Vector& dual() const { return h_; }

private:
  GaborSystem sys_;
  Vector h_;
  std::shared_ptr<const StftSeminorm> seminorms_;
};

struct SummabilityCertificate {
  int n = 0;
  int N = 0;                     // n + 4
  std::vector<Real> shell_sums;  // sum over lattice shell s of |c_lambda| q_n(pi(lambda) h)
  Real total = 0.0;
  Real qN_h = 0.0;
  Real qN_f = 0.0;
  Real weight_sum = 0.0;  // sum_lambda v_N(lambda)^{-1} v_n(lambda)
  Real bound = 0.0;       // qN_h * qN_f * weight_sum
  Real decay_ratio = 0.0; // geometric fit of shell sums beyond shell 2
  bool within_bound = true;          // total <= bound (1 + 1e-6)
  bool monotone_beyond_shell2 = true;
};

// q_n(pi(lambda) h) is evaluated through |<pi(lambda) h, pi(z) g>| = |<h, pi(z - lambda) g>|.
SummabilityCertificate summability_certificate(const GaborSystem& sys, const Vector& f, const Vector& h, int n);

} // namespace atomdec

#endif
