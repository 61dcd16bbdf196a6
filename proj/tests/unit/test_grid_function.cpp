#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "atomdec/coefficients.hpp"
#include "atomdec/grid_function.hpp"
#include "atomdec/tables.hpp"

using namespace atomdec;

TEST(GridShape, BoxIsLeftClosed) {
  const auto shape = GridShape::box(1, 2.0, 8);
  EXPECT_DOUBLE_EQ(shape.spacing(), 0.5);
  EXPECT_DOUBLE_EQ(shape.coordinate(0), -2.0);
  EXPECT_DOUBLE_EQ(shape.coordinate(7), 1.5);
  EXPECT_EQ(shape.period.value(), 4.0);
}

TEST(GridShape, RejectsNonPowerOfTwo) {
  EXPECT_THROW(GridShape::box(1, 1.0, 12), InputError);
  EXPECT_THROW(GridShape::box(3, 1.0, 16), InputError);
  EXPECT_NO_THROW(GridShape::cyclic(64));
}

TEST(GridShape, FlatIndexIsRowMajor) {
  const auto shape = GridShape::box(2, 1.0, 4);
  EXPECT_EQ(shape.size(), 16);
  EXPECT_EQ(shape.flat(2, 3), 11);
}

TEST(GridFunction, SampleOneAndTwoDimensions) {
  const auto s1 = GridShape::box(1, 1.0, 16);
  const auto f = GridFunction::sample(s1, [](Real x) { return x * x; });
  EXPECT_DOUBLE_EQ(f(0).real(), 1.0);
  const auto s2 = GridShape::box(2, 1.0, 8);
  const auto g = GridFunction::sample(s2, [](Real x, Real y) { return x - y; });
  EXPECT_DOUBLE_EQ(g.at(0, 7).real(), s2.coordinate(0) - s2.coordinate(7));
  EXPECT_THROW(GridFunction::sample(s2, [](Real x) { return x; }), InputError);
  EXPECT_THROW(GridFunction::sample(s1, [](Real x, Real y) { return x + y; }), InputError);
}

TEST(GridFunction, RejectsNonFiniteSamples) {
  Vector v = Vector::Zero(8);
  v(3) = std::numeric_limits<Real>::quiet_NaN();
  EXPECT_THROW(GridFunction(GridShape::cyclic(8), v), InputError);
}

TEST(GridFunction, ArithmeticAndDifference) {
  const auto s = GridShape::cyclic(8);
  const auto f = GridFunction::sample(s, [](Real t) { return t; });
  const auto g = GridFunction::sample(s, [](Real t) { return 2.0 * t; });
  EXPECT_EQ(max_abs_difference(f + f, g), 0.0);
  EXPECT_EQ(max_abs_difference(g - f, f), 0.0);
  EXPECT_EQ(max_abs_difference(Scalar(2.0) * f, g), 0.0);
  EXPECT_THROW(f + GridFunction::zeros(GridShape::cyclic(16)), InputError);
}

TEST(GridFunction, CsvRoundTripIsExact) {
  std::mt19937_64 rng(7);
  std::normal_distribution<Real> normal;
  const auto s = GridShape::box(2, 1.5, 4);
  Vector v(s.size());
  for (long i = 0; i < v.size(); ++i)
    v(i) = Scalar(normal(rng), normal(rng));
  const GridFunction f(s, v);
  std::stringstream buf;
  write_csv(buf, f);
  const auto back = read_grid_csv(buf);
  EXPECT_TRUE(back.shape() == s);
  EXPECT_EQ(max_abs_difference(back, f), 0.0);
}

TEST(Tables, FormatRealRoundTrips) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<Real> u(-1e6, 1e6);
  for (int k = 0; k < 1000; ++k) {
    const Real x = u(rng) * std::pow(10.0, Real(k % 40 - 20));
    EXPECT_EQ(parse_real(format_real(x)), x);
  }
  EXPECT_THROW(parse_real("1.5x"), InputError);
  EXPECT_THROW(parse_integer("3.0"), InputError);
}

TEST(Tables, PlotdataSortedBySeriesThenX) {
  TidyTable t;
  t.add("b", 2, 1.0);
  t.add("a", 16, 2.0);
  t.add("b", 1, 3.0);
  t.add("a", 8, 4.0);
  std::ostringstream out;
  emit_plotdata(out, t);
  EXPECT_EQ(out.str(), "series,x,y\na,8,4\na,16,2\nb,1,3\nb,2,1\n");
}

TEST(Tables, PlotdataRefusesEmptyTable) {
  std::ostringstream out;
  EXPECT_THROW(emit_plotdata(out, TidyTable{}), InputError);
}

TEST(IndexSet, ShellOrder1D) {
  const auto s = IndexSet::shells(1, 3);
  ASSERT_EQ(s.size(), 7);
  const std::vector<int> expected = {0, -1, 1, -2, 2, -3, 3};
  for (long k = 0; k < s.size(); ++k)
    EXPECT_EQ(s[k][0], expected[std::size_t(k)]);
  EXPECT_EQ(s.count_within(0), 1);
  EXPECT_EQ(s.count_within(2), 5);
  EXPECT_EQ(s.position({3, 0}), 6);
  EXPECT_EQ(s.position({4, 0}), -1);
}

TEST(IndexSet, ShellOrder2DIsNondecreasing) {
  const auto s = IndexSet::shells(2, 4);
  EXPECT_EQ(s.size(), 81);
  for (long k = 1; k < s.size(); ++k)
    EXPECT_LE(s.magnitude(k - 1), s.magnitude(k));
  for (int m = 0; m <= 4; ++m)
    EXPECT_EQ(s.count_within(m), (2 * m + 1) * (2 * m + 1));
}

TEST(IndexSet, SequentialAndBox) {
  const auto s = IndexSet::sequential(5);
  EXPECT_EQ(s[0][0], 1);
  EXPECT_EQ(s.max_magnitude(), 5);
  const auto b = IndexSet::box({-2, -1}, {1, 1});
  EXPECT_EQ(b.size(), 12);
  EXPECT_EQ(b.count_within(1), 9);
}

TEST(CoefficientSeq, CsvRoundTripAndTruncation) {
  auto idx = std::make_shared<const IndexSet>(IndexSet::shells(2, 2));
  Vector v(idx->size());
  for (long k = 0; k < v.size(); ++k)
    v(k) = Scalar(Real(k) / 3.0, -Real(k));
  const CoefficientSeq c(idx, v);
  std::stringstream buf;
  write_csv(buf, c);
  const auto back = read_coefficient_csv(buf);
  EXPECT_TRUE(back.indices() == c.indices());
  EXPECT_EQ((back.values() - v).norm(), 0.0);
  const auto t = c.truncated(1);
  EXPECT_EQ(t.size(), 9);
  EXPECT_EQ(t.at({1, 1}), c.at({1, 1}));
  EXPECT_EQ(c.at({5, 0}), Scalar(0.0));
}
