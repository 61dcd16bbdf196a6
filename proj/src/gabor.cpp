#include "atomdec/gabor.hpp"

#include <algorithm>
#include <cmath>

namespace atomdec {

namespace {

constexpr Real frame_floor = 1e-10;

long mod(long t, long L) { return ((t % L) + L) % L; }

// E[k] = e^{2 pi i k / L}
std::vector<Scalar> unit_roots(long L) {
  std::vector<Scalar> e(static_cast<std::size_t>(L));
  for (long k = 0; k < L; ++k)
    e[std::size_t(k)] = std::polar(1.0, two_pi * Real(k) / Real(L));
  return e;
}

// <f, pi(x, xi) g> = sum_t f(t) conj(g(t - x)) conj(E[xi t])
Scalar shifted_inner(const Vector& f, const Vector& g, long x, long xi, const std::vector<Scalar>& E) {
  const long L = f.size();
  Scalar acc = 0.0;
  for (long t = 0; t < L; ++t)
    acc += f(t) * std::conj(g(mod(t - x, L))) * std::conj(E[std::size_t(mod(xi * t, L))]);
  return acc;
}

void check_signal(const Vector& f, long L, const char* what) {
  if (f.size() != L)
    throw InputError(std::string(what) + " has length " + std::to_string(f.size()) + ", expected " +
                     std::to_string(L));
  if (!f.allFinite())
    throw InputError(std::string(what) + " has non-finite samples");
}

} // namespace

Vector tf_shift(const Vector& f, long x, long xi) {
  const long L = f.size();
  const auto E = unit_roots(L);
  Vector out(L);
  for (long t = 0; t < L; ++t)
    out(t) = E[std::size_t(mod(xi * t, L))] * f(mod(t - x, L));
  return out;
}

Real phys_norm(long x, long xi, long L) {
  const Real xs = Real(wrap_symmetric(x, L));
  const Real fs = Real(wrap_symmetric(xi, L));
  return std::sqrt(xs * xs + fs * fs) / std::sqrt(Real(L));
}

Real tf_weight(long x, long xi, long L, int n) { return std::pow(1.0 + phys_norm(x, xi, L), n); }

Vector gaussian_window(long L) {
  if (L < 2)
    throw InputError("window length must be at least 2");
  Vector g = Vector::Zero(L);
  // periodize over enough copies for double precision
  for (long t = 0; t < L; ++t)
    for (long copy = -4; copy <= 4; ++copy) {
      const Real s = Real(wrap_symmetric(t, L) + copy * L);
      g(t) += std::exp(-pi * s * s / Real(L));
    }
  return g / g.norm();
}

Vector impulse_window(long L) {
  Vector g = Vector::Zero(L);
  g(0) = 1.0;
  return g;
}

GaborSystem::GaborSystem(long L, long a, long b, Vector window) : L_(L), a_(a), b_(b), g_(std::move(window)) {
  if (!is_power_of_two(L) || L < 2)
    throw InputError("Gabor model order L must be a power of two >= 2");
  if (a < 1 || b < 1 || L % a != 0 || L % b != 0)
    throw InputError("lattice steps a, b must divide L");
  if (a * b > L)
    throw InputError("lattice too coarse: a*b exceeds L");
  check_signal(g_, L, "window");
  if (std::abs(g_.norm() - 1.0) > 1e-10)
    throw InputError("window must have unit l2 norm");
  const long na = L / a, nb = L / b;
  const int lo0 = int(-(na / 2)), lo1 = int(-(nb / 2));
  lattice_ = std::make_shared<const IndexSet>(
      IndexSet::box({lo0, lo1}, {lo0 + int(na) - 1, lo1 + int(nb) - 1}));
}

std::array<long, 2> GaborSystem::point(long k) const {
  const auto& j = (*lattice_)[k];
  return {mod(long(j[0]) * a_, L_), mod(long(j[1]) * b_, L_)};
}

Matrix frame_operator(const GaborSystem& sys) {
  const long L = sys.L(), a = sys.a(), period = L / sys.b();
  const Vector& g = sys.window();
  Matrix S = Matrix::Zero(L, L);
  for (long t = 0; t < L; ++t)
    for (long s = t % period; s < L; s += period) {
      Scalar acc = 0.0;
      for (long k = 0; k < L / a; ++k)
        acc += g(mod(t - k * a, L)) * std::conj(g(mod(s - k * a, L)));
      S(t, s) = Real(period) * acc;
    }
  return S;
}

Matrix synthesis_matrix(const GaborSystem& sys, const Vector& window) {
  check_signal(window, sys.L(), "window");
  Matrix G(sys.L(), sys.lattice_size());
  for (long k = 0; k < sys.lattice_size(); ++k) {
    const auto [x, xi] = sys.point(k);
    G.col(k) = tf_shift(window, x, xi);
  }
  return G;
}

FrameBounds frame_bounds(const GaborSystem& sys) {
  const Matrix S = frame_operator(sys);
  const long period = sys.L() / sys.b();
  const long size = sys.b();
  FrameBounds fb{std::numeric_limits<Real>::infinity(), 0.0};
  for (long r = 0; r < period; ++r) {
    Matrix block(size, size);
    for (long m = 0; m < size; ++m)
      for (long n = 0; n < size; ++n)
        block(m, n) = S(r + m * period, r + n * period);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(block, Eigen::EigenvaluesOnly);
    fb.A = std::min(fb.A, eig.eigenvalues().minCoeff());
    fb.B = std::max(fb.B, eig.eigenvalues().maxCoeff());
  }
  return fb;
}

Vector dual_window(const GaborSystem& sys) {
  const FrameBounds fb = frame_bounds(sys);
  if (!(fb.A > frame_floor))
    throw GateRefusal("not a frame: lower frame bound A = " + std::to_string(fb.A) +
                          ", upper bound B = " + std::to_string(fb.B),
                      fb.A);
  Eigen::LLT<Matrix> llt(frame_operator(sys));
  if (llt.info() != Eigen::Success)
    throw GateRefusal("frame operator is not numerically positive definite", fb.A);
  return llt.solve(sys.window());
}

CoefficientSeq gabor_analyze(const GaborSystem& sys, const Vector& f) {
  check_signal(f, sys.L(), "signal");
  const auto E = unit_roots(sys.L());
  Vector c(sys.lattice_size());
  for (long k = 0; k < c.size(); ++k) {
    const auto [x, xi] = sys.point(k);
    c(k) = shifted_inner(f, sys.window(), x, xi, E);
  }
  return CoefficientSeq(sys.lattice_ptr(), std::move(c));
}

Vector gabor_reconstruct(const GaborSystem& sys, const CoefficientSeq& coeffs, const Vector& h) {
  check_signal(h, sys.L(), "dual window");
  if (coeffs.size() != sys.lattice_size() || !(coeffs.indices() == sys.lattice()))
    throw InputError("coefficient set does not cover the Gabor lattice");
  const long L = sys.L();
  const auto E = unit_roots(L);
  Vector out = Vector::Zero(L);
  for (long k = 0; k < coeffs.size(); ++k) {
    const Scalar c = coeffs[k];
    if (c == Scalar(0.0))
      continue;
    const auto [x, xi] = sys.point(k);
    for (long t = 0; t < L; ++t)
      out(t) += c * (E[std::size_t(mod(xi * t, L))] * h(mod(t - x, L)));
  }
  return out;
}

Matrix stft(const Vector& f, const Vector& g) {
  const long L = f.size();
  check_signal(g, L, "window");
  const auto E = unit_roots(L);
  Matrix V(L, L);
  for (long x = 0; x < L; ++x)
    for (long xi = 0; xi < L; ++xi)
      V(x, xi) = shifted_inner(f, g, x, xi, E);
  return V;
}

StftSeminorm::StftSeminorm(Vector window, int max_order) : g_(std::move(window)), max_order_(max_order) {
  if (max_order < 0 || max_order > 8)
    throw InputError("weighted-stft orders are limited to 0..8");
}

std::vector<Real> StftSeminorm::evaluate_upto(const Vector& f, int n_max) const {
  const long L = g_.size();
  check_signal(f, L, "signal");
  const Matrix V = stft(f, g_);
  std::vector<Real> out(std::size_t(n_max + 1), 0.0);
  for (long x = 0; x < L; ++x)
    for (long xi = 0; xi < L; ++xi) {
      const Real m = std::abs(V(x, xi));
      const Real r = phys_norm(x, xi, L);
      for (int n = 0; n <= n_max; ++n)
        out[std::size_t(n)] = std::max(out[std::size_t(n)], m * std::pow(1.0 + r, n));
    }
  return out;
}

Real StftSeminorm::evaluate(const Vector& f, int n) const { return evaluate_upto(f, n).back(); }

Real stft_seminorm(const GaborSystem& sys, const Vector& f, int n) {
  return seminorm_eval(StftSeminorm(sys.window()), f, n);
}

GaborDecomposition::GaborDecomposition(GaborSystem sys) : GaborDecomposition(sys, dual_window(sys)) {}

GaborDecomposition::GaborDecomposition(GaborSystem sys, Vector dual)
  : sys_(std::move(sys)), h_(std::move(dual)),
    seminorms_(std::make_shared<const StftSeminorm>(sys_.window())) {
  check_signal(h_, sys_.L(), "dual window");
}

Vector GaborDecomposition::atom(long k) const {
  const auto [x, xi] = sys_.point(k);
  return tf_shift(h_, x, xi);
}

Vector GaborDecomposition::analyze(const Vector& f) const { return gabor_analyze(sys_, f).values(); }

std::vector<int> GaborDecomposition::default_ngrid() const {
  auto grid = AtomicDecomposition::default_ngrid();
  if (grid.size() >= 3)
    return grid;
  // lattices are short; use the shells themselves
  grid.clear();
  const int T = truncation();
  for (int n = 1; n < T - 1; n *= 2)
    grid.push_back(n);
  if (T > 1)
    grid.push_back(T - 1);
  return grid;
}

SummabilityCertificate summability_certificate(const GaborSystem& sys, const Vector& f, const Vector& h, int n) {
  if (n < 0 || n > 4)
    throw InputError("summability certificate needs 0 <= n <= 4");
  check_signal(f, sys.L(), "signal");
  check_signal(h, sys.L(), "dual window");
  const long L = sys.L();
  SummabilityCertificate cert;
  cert.n = n;
  cert.N = n + 4;

  const StftSeminorm q(sys.window());
  cert.qN_h = q.evaluate(h, cert.N);
  cert.qN_f = q.evaluate(f, cert.N);

  const CoefficientSeq c = gabor_analyze(sys, f);
  const Matrix Vh = stft(h, sys.window());
  const Eigen::MatrixXd modulus = Vh.cwiseAbs();

  cert.shell_sums.assign(std::size_t(sys.lattice().max_magnitude() + 1), 0.0);
  for (long k = 0; k < sys.lattice_size(); ++k) {
    const auto [x, xi] = sys.point(k);
    cert.weight_sum += tf_weight(x, xi, L, n) / tf_weight(x, xi, L, cert.N);
    const Real ck = std::abs(c[k]);
    if (ck == 0.0)
      continue;
    // q_n(pi(lambda) h) = max_w |V_g h(w)| v_n(w + lambda)
    Real qn = 0.0;
    for (long wx = 0; wx < L; ++wx)
      for (long wxi = 0; wxi < L; ++wxi)
        qn = std::max(qn, modulus(wx, wxi) * tf_weight(wx + x, wxi + xi, L, n));
    cert.shell_sums[std::size_t(sys.lattice().magnitude(k))] += ck * qn;
  }
  for (Real s : cert.shell_sums)
    cert.total += s;
  cert.bound = cert.qN_h * cert.qN_f * cert.weight_sum;
  cert.within_bound = cert.total <= cert.bound * (1.0 + 1e-6);

  Real sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  long count = 0;
  for (std::size_t s = 2; s < cert.shell_sums.size(); ++s) {
    if (s + 1 < cert.shell_sums.size() && cert.shell_sums[s + 1] > cert.shell_sums[s])
      cert.monotone_beyond_shell2 = false;
    if (cert.shell_sums[s] > 0.0) {
      const Real x = Real(s), y = std::log(cert.shell_sums[s]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++count;
    }
  }
  const Real denom = Real(count) * sxx - sx * sx;
  if (count >= 2 && denom > 0.0)
    cert.decay_ratio = std::exp((Real(count) * sxy - sx * sy) / denom);
  return cert;
}

} // namespace atomdec
