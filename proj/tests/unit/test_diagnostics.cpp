#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "atomdec/diagnostics.hpp"
#include "atomdec/disc.hpp"
#include "atomdec/exp_cinfty.hpp"
#include "atomdec/gabor.hpp"
#include "atomdec/probes.hpp"

using namespace atomdec;

namespace {

const ExpDecomposition& exp_decomp(int J) {
  static const ExpDecomposition d64 = [] {
    ExpConfig c;
    c.J = 64;
    return ExpDecomposition(c);
  }();
  static const ExpDecomposition d128 = [] {
    ExpConfig c;
    c.J = 128;
    return ExpDecomposition(c);
  }();
  return J == 64 ? d64 : d128;
}

const GaborDecomposition& gabor_decomp() {
  static const GaborDecomposition d(GaborSystem(64, 4, 4, gaussian_window(64)));
  return d;
}

Vector p1_samples() { return probe_p1(full_box(1.0, 1, 1024)).samples(); }

} // namespace

TEST(TailApply, EndpointsAndValidation) {
  const auto& d = gabor_decomp();
  const Vector f = random_signals(64, 1, 5).front();
  EXPECT_EQ(tail_apply(d, d.truncation(), f).norm(), 0.0);
  EXPECT_THROW(tail_apply(d, d.truncation() + 1, f), InputError);
  EXPECT_THROW(tail_apply(d, -1, f), InputError);
}

TEST(TailApply, TruncatedElementHasExactTails) {
  // biorthogonal system: f = sum over |j| <= 3 gives T_n f = 0 for n >= 3 and
  // the shell 3 part for n = 2
  const GaborDecomposition d(GaborSystem(16, 1, 16, impulse_window(16)));
  Vector alpha = Vector::Zero(d.size());
  for (long k = 0; k < d.indices().count_within(3); ++k)
    alpha(k) = Scalar(1.0 / Real(1 + k), Real(k % 2));
  const Vector f = d.synthesize(alpha, d.size());
  EXPECT_LE(tail_apply(d, 3, f).cwiseAbs().maxCoeff(), 1e-12);
  Vector shell3 = Vector::Zero(d.size());
  const long lo = d.indices().count_within(2), hi = d.indices().count_within(3);
  shell3.segment(lo, hi - lo) = alpha.segment(lo, hi - lo);
  EXPECT_LE((tail_apply(d, 2, f) - d.synthesize(shell3, d.size())).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(TailApply, OrthonormalGaborSingleAtom) {
  const GaborDecomposition d(GaborSystem(16, 1, 16, impulse_window(16)));
  const Vector e = tf_shift(impulse_window(16), 3, 0);
  const long k = d.indices().position({3, 0});
  ASSERT_GE(k, 0);
  const int m = d.indices().magnitude(k);
  EXPECT_LE((tail_apply(d, m - 1, e) - e).norm(), 1e-14);
  EXPECT_EQ(tail_apply(d, m, e).norm(), 0.0);
}

TEST(TailApply, P1TailShrinks) {
  const auto& d = exp_decomp(64);
  const Vector f = p1_samples();
  Real prev = std::numeric_limits<Real>::infinity();
  for (int n : {8, 16, 32}) {
    const Real q = d.seminorms().evaluate(tail_apply(d, n, f), 0);
    EXPECT_LT(q, prev) << n;
    prev = q;
  }
}

TEST(ShrinkingCurve, ConstructedCurves) {
  const auto& d = gabor_decomp();
  ProbeSet zero = make_probe_set(d, {Vector::Zero(64)}, default_functionals(d));
  EXPECT_EQ(zero.bound, 0.0);
  EXPECT_TRUE(certified(d, zero));
  const auto report = shrinking_curve(d, zero, {1, 4, 8});
  EXPECT_TRUE(report.consistent);
  EXPECT_TRUE(std::isinf(report.min_decrease));
  for (const auto& c : report.curves)
    for (Real v : c.values)
      EXPECT_EQ(v, 0.0);
}

TEST(ShrinkingCurve, ExpReachesThousandfoldDecrease) {
  const auto& d = exp_decomp(128);
  const GridShape box = *d.grid();
  const auto probes = make_probe_set(d, samples_of(exp_probe_set(box)), default_functionals(d));
  const auto report = shrinking_curve(d, probes, resolve_ngrid(d, {}));
  EXPECT_TRUE(report.consistent);
  EXPECT_GE(report.min_decrease, 1e3);
  EXPECT_EQ(report.curves.size(), default_functionals(d).size());
}

TEST(ShrinkingCurve, GaborGridEndingAtTruncationVanishes) {
  const auto& d = gabor_decomp();
  const auto probes = make_probe_set(d, samples_of(gabor_probe_set(d.system())), default_functionals(d));
  const auto report = shrinking_curve(d, probes, {1, 2, 4, d.truncation()});
  EXPECT_TRUE(report.consistent);
  for (const auto& c : report.curves)
    EXPECT_LE(c.values.back(), 1e-6 * c.values.front()) << c.id;
  const auto fallback = shrinking_curve(d, probes, resolve_ngrid(d, {}));
  EXPECT_GE(fallback.min_decrease, 1e3);
}

TEST(ShrinkingCurve, CurvesAreMonotoneOverTheLastGridPoints) {
  const auto& d = exp_decomp(128);
  const auto probes = make_probe_set(d, {p1_samples()}, default_functionals(d));
  const auto ngrid = resolve_ngrid(d, {});
  const auto report = shrinking_curve(d, probes, ngrid);
  for (const auto& c : report.curves) {
    const std::size_t n = c.values.size();
    ASSERT_GE(n, 3u);
    EXPECT_GE(c.values[n - 3], c.values[n - 2]) << c.id;
    EXPECT_GE(c.values[n - 2], c.values[n - 1]) << c.id;
  }
}

TEST(BoundedCompleteness, FiniteSupportGivesZeroIncrements) {
  const auto& d = exp_decomp(64);
  Vector v = Vector::Zero(d.size());
  v(0) = 1.0;
  v(1) = 0.5;
  const CoefficientSeq c(d.index_ptr(), v);
  const auto report = boundedly_complete_probe(d, c, {8, 16, 32, 64}, {0, 1});
  EXPECT_TRUE(report.consistent);
  for (const auto& s : report.series)
    for (Real inc : s.increments)
      EXPECT_EQ(inc, 0.0);
}

TEST(BoundedCompleteness, P1IncrementsShrink) {
  const auto& d = exp_decomp(64);
  const auto c = analyze(d, p1_samples());
  const auto report = boundedly_complete_probe(d, c, {4, 8, 16, 32}, {2});
  EXPECT_TRUE(report.consistent);
  const auto& inc = report.series.front().increments;
  ASSERT_EQ(inc.size(), 3u);
  EXPECT_GT(inc[0], inc[1]);
  EXPECT_GT(inc[1], inc[2]);
  EXPECT_LE(inc[2], inc[0] / 10.0);
}

TEST(BoundedCompleteness, HarmonicCoefficientsAreNotConsistent) {
  // alpha_j = 1 / (1 + |j|) keeps partial sums growing in q_1
  const auto& d = exp_decomp(64);
  Vector v(d.size());
  for (long k = 0; k < d.size(); ++k)
    v(k) = 1.0 / Real(1 + d.indices().magnitude(k));
  const auto report = boundedly_complete_probe(d, CoefficientSeq(d.index_ptr(), v), {4, 8, 16, 32, 64}, {1});
  EXPECT_FALSE(report.consistent);
  EXPECT_THROW(boundedly_complete_probe(d, CoefficientSeq(d.index_ptr(), v), {4, 8}, {}), InputError);
  EXPECT_THROW(boundedly_complete_probe(d, CoefficientSeq(d.index_ptr(), v), {4, 8}, {99}), InputError);
}

TEST(ResolveNgrid, DefaultsAndErrors) {
  const auto& d = exp_decomp(64);
  EXPECT_EQ(resolve_ngrid(d, {}), (std::vector<int>{8, 16, 32, 64}));
  EXPECT_EQ(resolve_ngrid(d, {2, 8, 500}), (std::vector<int>{2, 8}));
  EXPECT_THROW(resolve_ngrid(d, {8, 4}), InputError);
  EXPECT_THROW(resolve_ngrid(d, {-1, 4}), InputError);
  EXPECT_THROW(resolve_ngrid(d, {8}), InputError);
  const DiscDecomposition disc(build_partition(6), 32);
  const auto grid = resolve_ngrid(disc, {});
  EXPECT_GE(grid.size(), 2u);
  EXPECT_EQ(grid.front(), 8);
}

TEST(ProbeSet, RejectsForeignElements) {
  const auto& d = gabor_decomp();
  EXPECT_THROW(make_probe_set(d, {Vector::Zero(10)}, {}), InputError);
}
