#include <gtest/gtest.h>

#include <cmath>

#include "atomdec/decomposition.hpp"
#include "atomdec/exp_cinfty.hpp"
#include "atomdec/gabor.hpp"
#include "atomdec/probes.hpp"

using namespace atomdec;

namespace {

const ExpDecomposition& exp_decomp() {
  static const ExpDecomposition d{ExpConfig{}};
  return d;
}

const GaborDecomposition& gabor_decomp() {
  static const GaborDecomposition d(GaborSystem(64, 4, 4, gaussian_window(64)));
  return d;
}

Vector p1_samples() { return probe_p1(full_box(1.0, 1, 1024)).samples(); }

} // namespace

TEST(Analyze, ZeroElementHasZeroCoefficients) {
  EXPECT_EQ(analyze(exp_decomp(), Vector(Vector::Zero(1024))).values().norm(), 0.0);
  EXPECT_EQ(analyze(gabor_decomp(), Vector(Vector::Zero(64))).values().norm(), 0.0);
  EXPECT_THROW(analyze(gabor_decomp(), Vector(Vector::Zero(63))), InputError);
}

TEST(Analyze, GaborWindowHasUnitCoefficientAtOrigin) {
  const auto& d = gabor_decomp();
  const auto c = analyze(d, d.system().window());
  EXPECT_NEAR(std::abs(c.at({0, 0}) - 1.0), 0.0, 1e-14);
}

TEST(Synthesize, OrderBeyondCoefficientsIsRejected) {
  const auto& d = gabor_decomp();
  const auto c = analyze(d, d.system().window()).truncated(2);
  EXPECT_NO_THROW(synthesize(d, c, 2));
  EXPECT_THROW(synthesize(d, c, 3), InputError);
  EXPECT_THROW(synthesize(d, c, -1), InputError);
}

TEST(Synthesize, GridVersionNeedsAGrid) {
  const auto& d = exp_decomp();
  const auto c = analyze(d, p1_samples());
  const GridFunction g = synthesize_grid(d, c, 64);
  EXPECT_TRUE(g.shape() == *d.grid());
}

TEST(PartialSumSeminorm, SingleTermAndDominance) {
  const auto& d = exp_decomp();
  Vector v = Vector::Zero(d.size());
  v(3) = Scalar(0.0, 2.0);
  const CoefficientSeq one(d.index_ptr(), v);
  EXPECT_NEAR(partial_sum_seminorm(d, one, 0, d.size()), 2.0, 1e-10);
  EXPECT_EQ(partial_sum_seminorm(d, one, 0, 3), 0.0);

  const auto c = analyze(d, p1_samples());
  for (int n : {0, 2}) {
    const Real full = d.seminorms().evaluate(synthesize(d, c, d.truncation()), n);
    const Real sup = partial_sum_seminorm(d, c, n, d.size());
    EXPECT_GE(sup, full * (1 - 1e-12));
    EXPECT_GE(sup, partial_sum_seminorm(d, c, n, 20));
  }
  EXPECT_THROW(partial_sum_seminorm(d, c, 0, d.size() + 1), InputError);
  EXPECT_THROW(partial_sum_seminorm(d, c, 99, 3), InputError);
}

TEST(UnconditionalEstimate, ZeroAndSingleTerm) {
  const auto& d = exp_decomp();
  const CoefficientSeq zero = CoefficientSeq::zeros(d.index_ptr());
  const auto z = unconditional_seminorm_estimate(d, zero, 1, 16);
  EXPECT_EQ(z.lower, 0.0);
  EXPECT_EQ(z.upper, 0.0);

  Vector v = Vector::Zero(d.size());
  v(5) = 0.25;
  const auto s = unconditional_seminorm_estimate(d, CoefficientSeq(d.index_ptr(), v), 1, 8);
  EXPECT_NEAR(s.lower, s.upper, 1e-10 * s.upper);
  EXPECT_THROW(unconditional_seminorm_estimate(d, zero, 1, 0), InputError);
}

TEST(UnconditionalEstimate, SandwichOnP1) {
  const auto& d = exp_decomp();
  const auto c = analyze(d, p1_samples());
  for (int n : {0, 1, 3}) {
    const auto est = unconditional_seminorm_estimate(d, c, n, 256);
    const Real plain = d.seminorms().evaluate(synthesize(d, c, d.truncation()), n);
    EXPECT_GE(est.lower, plain * (1 - 1e-12)) << n;
    EXPECT_LE(est.lower, est.upper * (1 + 1e-12)) << n;
    EXPECT_EQ(est.samples, 256);
    EXPECT_EQ(est.seed, default_seed);
  }
}

TEST(Factorization, RefiningTheTruncationKeepsLowCoefficients) {
  ExpConfig c64;
  ExpConfig c128;
  c128.J = 128;
  const ExpDecomposition d64(c64), d128(c128);
  const Vector f = p1_samples();
  const auto a64 = analyze(d64, f);
  const auto a128 = analyze(d128, f);
  // the duals do not depend on J, so the shared indices carry the same values
  for (long k = 0; k < a64.size(); ++k)
    EXPECT_EQ(a64[k], a128.at(a64.indices()[k]));
  EXPECT_LE(reproduction_residual(d128, f, 0, 128), reproduction_residual(d64, f, 0, 64) + 1e-15);
}

TEST(Embed, ForeignIndicesAreRejected) {
  const auto& d = gabor_decomp();
  auto idx = std::make_shared<const IndexSet>(IndexSet::shells(2, 20));
  const CoefficientSeq wide(idx, Vector::Ones(idx->size()));
  EXPECT_THROW(embed(d, wide), InputError);
  const auto narrow = analyze(d, d.system().window()).truncated(1);
  const Vector e = embed(d, narrow);
  EXPECT_EQ(e.size(), d.size());
  EXPECT_EQ(e.tail(d.size() - narrow.size()).norm(), 0.0);
}
