#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "singeq/complex.hpp"

namespace singeq::testing {
namespace {

template <typename T>
class ComplexTest : public ::testing::Test {};

using Scalars = ::testing::Types<Fp, Rational>;
TYPED_TEST_SUITE(ComplexTest, Scalars);

// Over k[x]/(x^2): the map A^r -> A^s given by right multiplication with
// c0 + c1 x entrywise (c0, c1 are s x r).
template <class S>
Mat<S> free_map(const Mat<S>& c0, const Mat<S>& c1) {
  const Index s = c0.rows(), r = c0.cols();
  Mat<S> out = Mat<S>::Zero(2 * s, 2 * r);
  for (Index i = 0; i < s; ++i)
    for (Index j = 0; j < r; ++j) {
      out(2 * i, 2 * j) = c0(i, j);
      out(2 * i + 1, 2 * j + 1) = c0(i, j);
      out(2 * i + 1, 2 * j) = c1(i, j);
    }
  return out;
}

template <class S>
Module<S> free_module(const AlgebraPtr<S>& a, Index r) {
  return direct_sum<S>(std::vector<Module<S>>(r, regular_module<S>(a)));
}

// random complex of free k[x]/(x^2)-modules whose differentials are multiples of x
template <class S>
Complex<S> random_free_complex(const AlgebraPtr<S>& a, int lo, std::mt19937_64& rng) {
  const int len = 1 + static_cast<int>(rng() % 3);
  std::vector<Module<S>> t;
  std::vector<Mat<S>> d;
  std::vector<Index> ranks;
  for (int i = 0; i < len; ++i) {
    ranks.push_back(1 + static_cast<Index>(rng() % 2));
    t.push_back(free_module<S>(a, ranks.back()));
    if (i == 0) {
      d.emplace_back();
      continue;
    }
    Mat<S> c1 = random_matrix<S>(a->field(), ranks[i - 1], ranks[i], rng);
    d.push_back(free_map<S>(zeros<S>(ranks[i - 1], ranks[i]), c1));
  }
  return Complex<S>(a, lo, t, d);
}

template <class S>
Index hdim(const Complex<S>& c, int n) {
  return homology<S>(c, n).dim();
}

TYPED_TEST(ComplexTest, HomologyOfMultiplicationByX) {
  using S = TypeParam;
  auto a = dual_numbers<S>();
  auto r = regular_module<S>(a);
  Complex<S> c(a, 0, {r, r}, {Mat<S>(), free_map<S>(mat<S>({{0}}), mat<S>({{1}}))});
  EXPECT_EQ(hdim<S>(c, 0), 1);
  EXPECT_EQ(hdim<S>(c, 1), 1);
  EXPECT_EQ(hdim<S>(c, 2), 0);
  EXPECT_EQ(euler_characteristic<S>(c), 0);
  EXPECT_FALSE(is_exact<S>(c));
  EXPECT_EQ(find_iso<S>(homology<S>(c, 0), simple_module<S>(a, 0), 1).kind, IsoResult<S>::Kind::Found);
}

TYPED_TEST(ComplexTest, RejectsNonComplexes) {
  using S = TypeParam;
  auto a = dual_numbers<S>();
  auto r = regular_module<S>(a);
  Mat<S> id = identity<S>(field_for<S>(), 2);
  EXPECT_THROW(Complex<S>(a, 0, {r, r, r}, {Mat<S>(), id, id}), InvalidComplex);
  // sends x to 1, not A-linear
  EXPECT_THROW(Complex<S>(a, 0, {r, r}, {Mat<S>(), mat<S>({{0, 1}, {0, 0}})}), InvalidComplex);
  EXPECT_THROW(Complex<S>(a, 0, {r, r}, {Mat<S>(), id, id}), InvalidComplex);
}

TYPED_TEST(ComplexTest, ShiftMovesHomology) {
  using S = TypeParam;
  std::mt19937_64 rng(3);
  auto a = dual_numbers<S>();
  for (int t = 0; t < 20; ++t) {
    auto c = random_free_complex<S>(a, -1, rng);
    for (int n : {-2, 1, 3}) {
      auto s = shift<S>(c, n);
      EXPECT_EQ(s.lo(), c.lo() + n);
      for (int i = c.lo() - 1; i <= c.hi() + 1; ++i) ASSERT_EQ(hdim<S>(s, i + n), hdim<S>(c, i));
    }
  }
}

TYPED_TEST(ComplexTest, ConeEulerAndExactness) {
  using S = TypeParam;
  std::mt19937_64 rng(9);
  auto a = dual_numbers<S>();
  for (int t = 0; t < 20; ++t) {
    auto c = random_free_complex<S>(a, 0, rng);
    auto id = identity_map<S>(c);
    EXPECT_TRUE(is_exact<S>(cone<S>(id).complex));
    EXPECT_TRUE(is_quasi_iso<S>(id));
    // chain map x * id: components kill everything in the image of d
    std::map<int, Mat<S>> comps;
    for (int n = c.lo(); n <= c.hi(); ++n) {
      const Index r = c.term(n).dim() / 2;
      comps[n] = free_map<S>(zeros<S>(r, r), identity<S>(field_for<S>(), r));
    }
    ChainMap<S> f(c, c, comps);
    auto cn = cone<S>(f);
    EXPECT_EQ(euler_characteristic<S>(cn.complex), euler_characteristic<S>(c) - euler_characteristic<S>(c));
    // long exact sequence: H_n(Y) -> H_n(cone) -> H_{n-1}(X) -> H_{n-1}(Y)
    for (int n = c.lo(); n <= c.hi() + 1; ++n) ASSERT_LE(hdim<S>(cn.complex, n), hdim<S>(c, n) + hdim<S>(c, n - 1));
    EXPECT_NO_THROW(compose<S>(cn.projection, cn.inclusion));
    auto zero = compose<S>(cn.projection, cn.inclusion);
    for (int n = c.lo(); n <= c.hi() + 1; ++n) ASSERT_TRUE(is_zero<S>(zero.at(n)));
  }
}

TYPED_TEST(ComplexTest, ResolutionOfResidueFieldOverDualNumbers) {
  using S = TypeParam;
  auto a = dual_numbers<S>();
  auto k = stalk<S>(simple_module<S>(a, 0));
  Resolution<S> r(k);
  for (int n = 0; n <= 6; ++n) {
    ASSERT_EQ(r.term(n).dim(), 2);
    if (n) ASSERT_EQ(rank<S>(r.d(n)), 1);
  }
  auto p = r.complex(6);
  EXPECT_TRUE(is_minimal<S>(p));
  EXPECT_EQ(hdim<S>(p, 0), 1);
  for (int n = 1; n < 6; ++n) EXPECT_EQ(hdim<S>(p, n), 0);
  auto perf = is_perfect<S>(k, 50);
  EXPECT_FALSE(perf.perfect());
  EXPECT_TRUE(perf.certified_infinite());
  EXPECT_EQ(perf.cutoff, 50);
}

TYPED_TEST(ComplexTest, SimpleOverT2IsPerfect) {
  using S = TypeParam;
  auto a = t2<S>();
  auto s1 = stalk<S>(simple_module<S>(a, 0));
  Resolution<S> r(s1);
  EXPECT_EQ(r.term(0).dim(), 2);
  EXPECT_EQ(r.vertices(0), (std::vector<Index>{0}));
  EXPECT_EQ(r.term(1).dim(), 1);
  EXPECT_EQ(r.vertices(1), (std::vector<Index>{1}));
  EXPECT_EQ(r.term(2).dim(), 0);
  auto perf = is_perfect<S>(s1);
  EXPECT_TRUE(perf.perfect());
  EXPECT_EQ(perf.bound, 1);
  EXPECT_FALSE(perf.zero);
  auto p2 = is_perfect<S>(stalk<S>(projective_module<S>(a, 1), 3));
  EXPECT_EQ(p2.bound, 3);
}

TYPED_TEST(ComplexTest, AcyclicComplexIsPerfectZero) {
  using S = TypeParam;
  auto a = dual_numbers<S>();
  auto k = simple_module<S>(a, 0);
  auto c = cone<S>(identity_map<S>(stalk<S>(k))).complex;
  auto perf = is_perfect<S>(c);
  EXPECT_TRUE(perf.perfect());
  EXPECT_TRUE(perf.zero);
}

TYPED_TEST(ComplexTest, ResolutionsOfRandomComplexesAreMinimalQuasiIsos) {
  using S = TypeParam;
  std::mt19937_64 rng(21);
  auto a = t2<S>();
  auto zoo = std::vector<Module<S>>{simple_module<S>(a, 0), simple_module<S>(a, 1), projective_module<S>(a, 0)};
  for (int t = 0; t < 15; ++t) {
    // two-term complex M1 -> M0 with a random homomorphism
    const auto& m1 = zoo[rng() % zoo.size()];
    const auto& m0 = zoo[rng() % zoo.size()];
    auto homs = hom_space<S>(m1, m0);
    Mat<S> d = zeros<S>(m0.dim(), m1.dim());
    for (const auto& h : homs) d += ScalarTraits<S>::random(a->field(), rng) * h;
    Complex<S> c(a, 0, {m0, m1}, {Mat<S>(), d});
    Resolution<S> r(c);
    auto perf = is_perfect<S>(r);
    ASSERT_TRUE(perf.perfect());
    const int top = std::max(perf.bound, c.hi());
    auto p = r.complex(top + 1);
    EXPECT_TRUE(is_minimal<S>(p));
    EXPECT_EQ(p.term(top + 1).dim(), 0);
    EXPECT_TRUE(is_quasi_iso<S>(r.map(top + 1)));
    auto tr = truncate_resolution<S>(r, c.hi());
    EXPECT_TRUE(is_quasi_iso<S>(tr.map));
  }
}

TYPED_TEST(ComplexTest, TruncationIsQuasiIsoOverDualNumbers) {
  using S = TypeParam;
  std::mt19937_64 rng(4);
  auto a = dual_numbers<S>();
  auto k = simple_module<S>(a, 0);
  for (int s = 0; s <= 3; ++s) {
    Resolution<S> r(stalk<S>(k));
    auto tr = truncate_resolution<S>(r, s);
    EXPECT_TRUE(is_quasi_iso<S>(tr.map));
    EXPECT_EQ(tr.complex.hi(), s);
  }
  for (int t = 0; t < 10; ++t) {
    auto c = random_free_complex<S>(a, -1, rng);
    Resolution<S> r(c);
    auto tr = truncate_resolution<S>(r, c.hi() + 1);
    EXPECT_TRUE(is_quasi_iso<S>(tr.map));
  }
}

TYPED_TEST(ComplexTest, PerfectnessClosedUnderShiftAndCone) {
  using S = TypeParam;
  std::mt19937_64 rng(17);
  auto a = dual_numbers<S>();
  auto k = stalk<S>(simple_module<S>(a, 0));
  for (int t = 0; t < 15; ++t) {
    auto c = random_free_complex<S>(a, static_cast<int>(rng() % 3) - 1, rng);
    auto pc = is_perfect<S>(c, 20);
    ASSERT_TRUE(pc.perfect());
    for (int n : {-1, 2}) {
      auto ps = is_perfect<S>(shift<S>(c, n), 20);
      ASSERT_TRUE(ps.perfect());
      if (!pc.zero) ASSERT_EQ(ps.bound, pc.bound + n);
    }
    std::map<int, Mat<S>> comps;
    for (int n = c.lo(); n <= c.hi(); ++n) {
      const Index r = c.term(n).dim() / 2;
      comps[n] = free_map<S>(zeros<S>(r, r), random_matrix<S>(a->field(), r, r, rng));
    }
    ChainMap<S> f(c, c, comps);
    ASSERT_TRUE(is_perfect<S>(cone<S>(f).complex, 20).perfect());
    ASSERT_TRUE(is_perfect<S>(cone<S>(identity_map<S>(c)).complex, 20).perfect());
    ASSERT_FALSE(is_perfect<S>(shift<S>(k, t % 3), 20).perfect());
  }
}

TYPED_TEST(ComplexTest, TensorWithRegularBimoduleIsIdentity) {
  using S = TypeParam;
  std::mt19937_64 rng(8);
  auto a = dual_numbers<S>();
  auto reg = stalk<S>(regular_bimodule<S>(a));
  for (int t = 0; t < 10; ++t) {
    auto c = random_free_complex<S>(a, 0, rng).as_left();
    // A (x)_A C
    auto tc = tensor_complexes<S>(reg, c);
    EXPECT_EQ(tc.complex.algebra(), a);
    for (int n = c.lo(); n <= c.hi(); ++n) {
      ASSERT_EQ(tc.complex.term(n).dim(), c.term(n).dim());
      ASSERT_EQ(hdim<S>(tc.complex, n), hdim<S>(c, n));
    }
  }
  auto t2a = t2<S>();
  auto x = stalk<S>(regular_bimodule<S>(t2a));
  auto s1 = stalk<S>(simple_module<S>(t2a, 0)).as_left();
  Resolution<S> r(s1);
  auto p = r.complex(1);
  auto tc = tensor_complexes<S>(x, p);
  EXPECT_EQ(hdim<S>(tc.complex, 0), 1);
  EXPECT_EQ(hdim<S>(tc.complex, 1), 0);
}

// k[x]/(x^2) is self-injective, so Hom_A(-, A) is exact and preserves dimensions
TYPED_TEST(ComplexTest, DualComplexOverSelfInjective) {
  using S = TypeParam;
  std::mt19937_64 rng(12);
  auto a = dual_numbers<S>();
  for (int t = 0; t < 10; ++t) {
    auto c = random_free_complex<S>(a, 0, rng).as_left();
    auto h = hom_complex_regular<S>(c);
    EXPECT_EQ(h.complex.lo(), -c.hi());
    EXPECT_EQ(h.complex.right(), a);
    for (int n = c.lo(); n <= c.hi(); ++n) ASSERT_EQ(hdim<S>(h.complex, -n), hdim<S>(c, n));
  }
}

TYPED_TEST(ComplexTest, EndComplexOfContractibleIsExact) {
  using S = TypeParam;
  auto a = dual_numbers<S>();
  auto r = regular_module<S>(a);
  Complex<S> c(a, 0, {r, r}, {Mat<S>(), identity<S>(field_for<S>(), 2)});
  auto ec = end_complex<S>(c.as_left());
  EXPECT_TRUE(is_exact<S>(ec.complex));
  auto e0 = end_complex<S>(stalk<S>(r).as_left());
  EXPECT_EQ(e0.complex.term(0).dim(), 2);
  // End of the two-term complex A --x--> A: H_0 counts chain maps up to homotopy
  Complex<S> cx(a, 0, {r, r}, {Mat<S>(), free_map<S>(mat<S>({{0}}), mat<S>({{1}}))});
  auto ex = end_complex<S>(cx.as_left());
  EXPECT_EQ(ex.complex.lo(), -1);
  EXPECT_EQ(ex.complex.term(0).dim(), 4);
  EXPECT_EQ(euler_characteristic<S>(ex.complex), 4 - 2 - 2);
}

TYPED_TEST(ComplexTest, HomComplexOfStalk) {
  using S = TypeParam;
  auto a = t2<S>();
  auto p = stalk<S>(projective_module<S>(a, 0), 2).as_left();
  auto h = hom_complex_regular<S>(p);
  EXPECT_EQ(h.complex.lo(), -2);
  // Hom_A(A e_1, A) = e_1 A
  EXPECT_EQ(h.complex.term(-2).dim(), 1);
  EXPECT_EQ(h.complex.right(), a);
  EXPECT_EQ(h.complex.left(), nullptr);
}

TYPED_TEST(ComplexTest, RestrictionToSides) {
  using S = TypeParam;
  auto a = dual_numbers<S>();
  auto x = stalk<S>(regular_bimodule<S>(a));
  auto l = restrict_complex<S>(x, Side::Left);
  EXPECT_EQ(l.algebra(), a);
  EXPECT_TRUE(is_perfect<S>(l).perfect());
  EXPECT_FALSE(is_perfect<S>(x, 10).perfect());
  auto rr = restrict_complex<S>(x, Side::Right);
  EXPECT_EQ(rr.algebra(), opposite<S>(a));
  EXPECT_EQ(rr.right(), a);
}

}  // namespace
}  // namespace singeq::testing
