#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

namespace singeq::testing {
namespace {

template <typename T>
class Linalg : public ::testing::Test {};

using Scalars = ::testing::Types<Fp, Rational>;
TYPED_TEST_SUITE(Linalg, Scalars);

TYPED_TEST(Linalg, RankOfDependentRows) {
  using S = TypeParam;
  EXPECT_EQ(rank<S>(mat<S>({{1, 2}, {2, 4}})), 1);
  EXPECT_EQ(rank<S>(mat<S>({{1, 0}, {0, 1}})), 2);
  EXPECT_EQ(rank<S>(Mat<S>(0, 3)), 0);
}

TYPED_TEST(Linalg, KernelOfSingleRow) {
  using S = TypeParam;
  Mat<S> k = kernel_basis<S>(mat<S>({{1, 1}}));
  ASSERT_EQ(k.cols(), 1);
  EXPECT_TRUE(equal<S>(k, mat<S>({{-1}, {1}})) || equal<S>(k, mat<S>({{1}, {-1}})));
}

TYPED_TEST(Linalg, SolveReturnsParticularAndKernel) {
  using S = TypeParam;
  auto s = solve<S>(mat<S>({{1, 1}, {0, 0}}), mat<S>({{2}, {0}}));
  ASSERT_TRUE(s);
  EXPECT_TRUE(equal<S>(s->particular, mat<S>({{2}, {0}})));
  ASSERT_EQ(s->kernel.cols(), 1);
  EXPECT_TRUE(equal<S>(mul<S>(mat<S>({{1, 1}}), s->kernel), mat<S>({{0}})));
}

TYPED_TEST(Linalg, InconsistentSystemHasNoSolution) {
  using S = TypeParam;
  EXPECT_FALSE(solve<S>(mat<S>({{1, 1}, {1, 1}}), mat<S>({{1}, {2}})));
}

TYPED_TEST(Linalg, ShapeMismatchThrows) {
  using S = TypeParam;
  EXPECT_THROW(solve<S>(mat<S>({{1, 1}}), mat<S>({{1}, {2}})), ShapeMismatch);
}

TYPED_TEST(Linalg, SpanCoordsRoundTrip) {
  using S = TypeParam;
  Mat<S> u = mat<S>({{1, 0}, {2, 1}, {0, 3}});
  SpanCoords<S> sc(u);
  Mat<S> x = mul<S>(u, mat<S>({{5}, {-2}}));
  EXPECT_TRUE(equal<S>(sc.coords(x), mat<S>({{5}, {-2}})));
  EXPECT_TRUE(sc.contains(x));
  EXPECT_FALSE(sc.contains(mat<S>({{1}, {0}, {0}})));
}

TYPED_TEST(Linalg, QuotientProjectionKillsSubspace) {
  using S = TypeParam;
  Mat<S> u = mat<S>({{1}, {1}, {0}});
  auto q = quotient<S>(u, 3);
  EXPECT_EQ(q.projection.rows(), 2);
  EXPECT_TRUE(is_zero<S>(mul<S>(q.projection, u)));
  EXPECT_TRUE(equal<S>(mul<S>(q.projection, q.section), identity<S>(field_for<S>(), 2)));
}

TYPED_TEST(Linalg, RankNullityOnRandomMatrices) {
  using S = TypeParam;
  std::mt19937_64 rng(7);
  const int runs = std::is_same_v<S, Fp> ? 1000 : 200;
  for (int t = 0; t < runs; ++t) {
    Index r = 1 + static_cast<Index>(rng() % 6), c = 1 + static_cast<Index>(rng() % 6);
    Mat<S> m = random_matrix<S>(field_for<S>(), r, c, rng);
    // force some dependence
    if (r > 1 && rng() % 2) m.row(r - 1) = m.row(0) + m.row(r > 2 ? 1 : 0);
    Mat<S> k = kernel_basis<S>(m);
    ASSERT_EQ(rank<S>(m) + k.cols(), c);
    ASSERT_TRUE(is_zero<S>(mul<S>(m, k)));
    ASSERT_EQ(rank<S>(k), k.cols());
  }
}

// Over F_5 the kernel can be counted by enumeration.
TEST(LinalgOracle, KernelSizeMatchesEnumeration) {
  const FieldSpec f = FieldSpec::prime(5);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 60; ++t) {
    Index r = 1 + static_cast<Index>(rng() % 3), c = 1 + static_cast<Index>(rng() % 4);
    Mat<Fp> m = random_matrix<Fp>(f, r, c, rng);
    long total = 1;
    for (Index i = 0; i < c; ++i) total *= 5;
    long zeros = 0;
    for (long code = 0; code < total; ++code) {
      Vec<Fp> x(c);
      long rest = code;
      for (Index i = 0; i < c; ++i, rest /= 5) x(i) = Fp(rest % 5, 5);
      Vec<Fp> y = mul<Fp>(m, Mat<Fp>(x)).col(0);
      bool z = true;
      for (Index i = 0; i < r; ++i) z = z && y(i).is_zero();
      zeros += z;
    }
    long expect = 1;
    for (Index i = 0; i < kernel_basis<Fp>(m).cols(); ++i) expect *= 5;
    ASSERT_EQ(zeros, expect);
  }
}

TEST(FpScalar, MixingModuliThrows) {
  EXPECT_THROW(Fp(1, 5) + Fp(1, 7), FieldMismatch);
}

TEST(FpScalar, InverseAndLiterals) {
  Fp a(3, 7);
  EXPECT_EQ(a * a.inverse(), Fp(1, 7));
  EXPECT_EQ(Fp(1) * a, a);
  EXPECT_EQ(Fp(0) + a, a);
  EXPECT_EQ(-a, Fp(4, 7));
}

TEST(FpScalar, ParseFractions) {
  auto f = FieldSpec::prime(7);
  EXPECT_EQ(ScalarTraits<Fp>::parse(f, "1/2"), Fp(4, 7));
  EXPECT_EQ(ScalarTraits<Fp>::parse(f, "-3"), Fp(4, 7));
  EXPECT_THROW(ScalarTraits<Fp>::parse(f, "x"), ValidationError);
}

TEST(FieldSpecTest, RejectsComposite) {
  EXPECT_THROW(FieldSpec::prime(32001), ValidationError);
  EXPECT_NO_THROW(FieldSpec::prime(2));
}

}  // namespace
}  // namespace singeq::testing
