#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "atomdec/gabor.hpp"
#include "atomdec/probes.hpp"

using namespace atomdec;

namespace {

long mod(long a, long L) { return ((a % L) + L) % L; }

// Same arithmetic as the library loop, written out independently.
Scalar brute_inner(const Vector& f, const Vector& g, long x, long xi) {
  const long L = f.size();
  Scalar acc = 0.0;
  for (long t = 0; t < L; ++t)
    acc += f(t) * std::conj(g(mod(t - x, L))) * std::conj(std::polar(1.0, two_pi * Real(mod(xi * t, L)) / Real(L)));
  return acc;
}

Real brute_seminorm(const Vector& f, const Vector& g, int n) {
  const long L = f.size();
  Real best = 0.0;
  for (long x = 0; x < L; ++x)
    for (long xi = 0; xi < L; ++xi) {
      const Real xs = Real(x < L / 2 ? x : x - L), fs = Real(xi < L / 2 ? xi : xi - L);
      const Real r = std::sqrt(xs * xs + fs * fs) / std::sqrt(Real(L));
      best = std::max(best, std::abs(brute_inner(f, g, x, xi)) * std::pow(1.0 + r, n));
    }
  return best;
}

const GaborSystem& standard() {
  static const GaborSystem sys(64, 4, 4, gaussian_window(64));
  return sys;
}

// S = G G^* from the explicit synthesis matrix.
Matrix dense_frame_operator(const GaborSystem& sys) {
  const Matrix G = synthesis_matrix(sys, sys.window());
  return G * G.adjoint();
}

} // namespace

TEST(GaborSystem, Validation) {
  EXPECT_THROW(GaborSystem(48, 4, 4, gaussian_window(48)), InputError);
  EXPECT_THROW(GaborSystem(64, 3, 4, gaussian_window(64)), InputError);
  EXPECT_THROW(GaborSystem(64, 4, 5, gaussian_window(64)), InputError);
  EXPECT_THROW(GaborSystem(64, 16, 8, gaussian_window(64)), InputError);
  EXPECT_THROW(GaborSystem(64, 4, 4, 2.0 * gaussian_window(64)), InputError);
  EXPECT_NO_THROW(GaborSystem(64, 4, 4, gaussian_window(64)));
}

TEST(GaborSystem, LatticeAndRedundancy) {
  const auto& sys = standard();
  EXPECT_EQ(sys.lattice_size(), 256);
  EXPECT_DOUBLE_EQ(sys.redundancy(), 4.0);
  for (long k = 0; k < sys.lattice_size(); ++k) {
    const auto [x, xi] = sys.point(k);
    EXPECT_EQ(x % 4, 0);
    EXPECT_EQ(xi % 4, 0);
  }
  EXPECT_EQ(sys.lattice().position({0, 0}), 0);
}

TEST(GaussianWindow, UnitNormAndEven) {
  const Vector g = gaussian_window(64);
  EXPECT_NEAR(g.norm(), 1.0, 1e-14);
  for (long t = 1; t < 64; ++t)
    EXPECT_NEAR(std::abs(g(t) - g(64 - t)), 0.0, 1e-15);
}

TEST(FrameOperator, OrthonormalImpulseIsIdentity) {
  const GaborSystem sys(16, 1, 16, impulse_window(16));
  EXPECT_LE((frame_operator(sys) - Matrix::Identity(16, 16)).norm(), 1e-14);
  const Vector h = dual_window(sys);
  EXPECT_LE((h - sys.window()).norm(), 1e-14);
}

TEST(FrameOperator, TightImpulseFrame) {
  const GaborSystem sys(16, 1, 8, impulse_window(16));
  EXPECT_LE((frame_operator(sys) - 2.0 * Matrix::Identity(16, 16)).norm(), 1e-13);
  EXPECT_LE((dual_window(sys) - sys.window() / 2.0).norm(), 1e-14);
}

TEST(FrameOperator, MatchesDenseSynthesisProduct) {
  const auto& sys = standard();
  const Matrix S = frame_operator(sys);
  EXPECT_LE((S - dense_frame_operator(sys)).norm(), 1e-12);
  EXPECT_LE((S - S.adjoint()).norm(), 1e-12);
}

TEST(FrameOperator, QuadraticFormIdentity) {
  const auto& sys = standard();
  const Matrix S = frame_operator(sys);
  for (const auto& f : random_signals(64, 10, 17)) {
    const Real lhs = (f.adjoint() * S * f)(0).real();
    const Real rhs = gabor_analyze(sys, f).values().squaredNorm();
    EXPECT_NEAR(lhs, rhs, 1e-10 * rhs);
  }
}

TEST(FrameBounds, MatchDenseEigensolve) {
  const auto& sys = standard();
  const auto fb = frame_bounds(sys);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(dense_frame_operator(sys), Eigen::EigenvaluesOnly);
  const Real A = eig.eigenvalues().minCoeff(), B = eig.eigenvalues().maxCoeff();
  EXPECT_NEAR(fb.A, A, 1e-10);
  EXPECT_NEAR(fb.B, B, 1e-10);
  EXPECT_NEAR(fb.B / fb.A, B / A, 1e-8);
  EXPECT_GT(fb.A, 0.0);
}

TEST(DualWindow, MatchesDenseSolve) {
  const auto& sys = standard();
  const Vector oracle = dense_frame_operator(sys).fullPivLu().solve(sys.window());
  EXPECT_LE((dual_window(sys) - oracle).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(DualWindow, WeightedProfileIsConcentrated) {
  // |h(t)| (1 + |t|)^4 peaks near the origin and stays an order of magnitude
  // below that peak in the outer quarter of the circle
  const Vector h = dual_window(standard());
  auto band = [&](long lo, long hi) {
    Real m = 0.0;
    for (long t = lo; t <= hi; ++t) {
      const Real w = std::pow(1.0 + Real(t), 4);
      m = std::max({m, std::abs(h(t)) * w, std::abs(h(mod(-t, 64))) * w});
    }
    return m;
  };
  const Real core = band(0, 8);
  EXPECT_LT(band(16, 32), core);
  EXPECT_LT(band(24, 32), 0.1 * core);
}

TEST(DualWindow, NotAFrameIsRefused) {
  // impulse with time step 2 never reaches odd samples
  const GaborSystem sys(16, 2, 2, impulse_window(16));
  EXPECT_LE(frame_bounds(sys).A, 1e-12);
  EXPECT_THROW(dual_window(sys), GateRefusal);
}

TEST(Analyze, ZeroWindowAndShiftedAtom) {
  const auto& sys = standard();
  EXPECT_EQ(gabor_analyze(sys, Vector::Zero(64)).values().norm(), 0.0);
  const auto c = gabor_analyze(sys, sys.window());
  EXPECT_NEAR(std::abs(c.at({0, 0}) - 1.0), 0.0, 1e-14);
  const Vector shifted = tf_shift(sys.window(), 8, 12);
  EXPECT_NEAR(std::abs(gabor_analyze(sys, shifted).at({2, 3})), 1.0, 1e-14);
}

TEST(Analyze, FrameInequality) {
  const auto& sys = standard();
  const auto fb = frame_bounds(sys);
  for (const auto& f : random_signals(64, 20, 29)) {
    const Real energy = gabor_analyze(sys, f).values().squaredNorm();
    EXPECT_GE(energy, fb.A * f.squaredNorm() * (1 - 1e-12));
    EXPECT_LE(energy, fb.B * f.squaredNorm() * (1 + 1e-12));
  }
}

TEST(Reconstruct, FiftyRandomProbes) {
  const auto& sys = standard();
  const Vector h = dual_window(sys);
  for (const auto& f : random_signals(64, 50, default_seed)) {
    const Vector back = gabor_reconstruct(sys, gabor_analyze(sys, f), h);
    EXPECT_LE((back - f).norm(), 1e-8 * f.norm());
  }
  const Vector g = sys.window();
  EXPECT_LE((gabor_reconstruct(sys, gabor_analyze(sys, g), h) - g).norm(), 1e-8);
}

TEST(Reconstruct, ZeroAndIncompleteCoefficients) {
  const auto& sys = standard();
  const Vector h = dual_window(sys);
  EXPECT_EQ(gabor_reconstruct(sys, CoefficientSeq::zeros(sys.lattice_ptr()), h).norm(), 0.0);
  const auto partial = gabor_analyze(sys, sys.window()).truncated(3);
  EXPECT_THROW(gabor_reconstruct(sys, partial, h), InputError);
}

TEST(Reconstruct, DualSymmetry) {
  const auto& sys = standard();
  const Vector h = dual_window(sys);
  const GaborSystem swapped(64, 4, 4, h / h.norm());
  for (const auto& f : random_signals(64, 10, 31)) {
    // analysis with h, synthesis with g
    const Vector back = gabor_reconstruct(swapped, gabor_analyze(swapped, f), sys.window() * h.norm());
    EXPECT_LE((back - f).norm(), 1e-8 * f.norm());
  }
}

TEST(StftSeminorm, MatchesBruteForceExactly) {
  const Vector g = gaussian_window(64);
  const StftSeminorm q(g);
  EXPECT_EQ(q.evaluate(g, 2), brute_seminorm(g, g, 2));
  const Vector f = random_signals(64, 1, 41).front();
  EXPECT_EQ(q.evaluate(f, 3), brute_seminorm(f, g, 3));
}

TEST(StftSeminorm, ZeroAndWindowAtOrigin) {
  const auto& sys = standard();
  EXPECT_EQ(stft_seminorm(sys, Vector::Zero(64), 4), 0.0);
  const Real q0 = stft_seminorm(sys, sys.window(), 0);
  EXPECT_NEAR(q0, 1.0, 1e-14);
  const Matrix V = stft(sys.window(), sys.window());
  EXPECT_NEAR(std::abs(V(0, 0)), 1.0, 1e-14);
  EXPECT_THROW(StftSeminorm(sys.window(), 9), InputError);
}

TEST(Covariance, ShiftedInnerProductModuli) {
  const auto& sys = standard();
  const Vector h = dual_window(sys);
  const Vector& g = sys.window();
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<long> pick(0, 63);
  for (int trial = 0; trial < 200; ++trial) {
    const long lx = pick(rng), lxi = pick(rng), zx = pick(rng), zxi = pick(rng);
    const Real lhs = std::abs(brute_inner(tf_shift(h, lx, lxi), g, zx, zxi));
    const Real rhs = std::abs(brute_inner(h, g, mod(zx - lx, 64), mod(zxi - lxi, 64)));
    EXPECT_NEAR(lhs, rhs, 1e-12);
  }
}

TEST(Weight, Submultiplicative) {
  std::mt19937_64 rng(47);
  std::uniform_int_distribution<long> pick(0, 63);
  for (int trial = 0; trial < 1000; ++trial) {
    const long zx = pick(rng), zxi = pick(rng), lx = pick(rng), lxi = pick(rng);
    const int n = int(trial % 9);
    const Real lhs = tf_weight(zx, zxi, 64, n);
    const Real rhs = tf_weight(mod(zx - lx, 64), mod(zxi - lxi, 64), 64, n) * tf_weight(lx, lxi, 64, n);
    EXPECT_LE(lhs, rhs * (1 + 1e-12));
  }
}

TEST(Certificate, ZeroSignal) {
  const auto& sys = standard();
  const auto c = summability_certificate(sys, Vector::Zero(64), dual_window(sys), 2);
  EXPECT_EQ(c.total, 0.0);
  EXPECT_EQ(c.bound, 0.0);
}

TEST(Certificate, OrthonormalBasisHasOneShell) {
  const GaborSystem sys(16, 1, 16, impulse_window(16));
  const auto c = summability_certificate(sys, sys.window(), dual_window(sys), 1);
  EXPECT_GT(c.shell_sums[0], 0.0);
  for (std::size_t s = 1; s < c.shell_sums.size(); ++s)
    EXPECT_EQ(c.shell_sums[s], 0.0);
}

TEST(Certificate, WindowWithinDominatingBound) {
  const auto& sys = standard();
  const auto c = summability_certificate(sys, sys.window(), dual_window(sys), 2);
  EXPECT_EQ(c.N, 6);
  EXPECT_TRUE(c.monotone_beyond_shell2);
  EXPECT_TRUE(c.within_bound);
  EXPECT_LE(c.total, c.bound * (1 + 1e-6));
  Real sum = 0.0;
  for (Real s : c.shell_sums)
    sum += s;
  EXPECT_NEAR(sum, c.total, 1e-12 * c.total);
  EXPECT_THROW(summability_certificate(sys, sys.window(), dual_window(sys), 5), InputError);
}

TEST(GaborDecomposition, AtomsAndDualsShareTheLattice) {
  const GaborDecomposition d(standard());
  EXPECT_EQ(d.size(), 256);
  EXPECT_EQ(d.dimension(), 64);
  const Vector f = random_signals(64, 1, 53).front();
  EXPECT_LE((d.synthesize(d.analyze(f), d.size()) - f).norm(), 1e-8 * f.norm());
  EXPECT_LE((d.atom(5) - tf_shift(d.dual(), d.system().point(5)[0], d.system().point(5)[1])).norm(), 0.0);
}
