#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace singeq::testing {
namespace {

template <typename T>
class ModuleTest : public ::testing::Test {};

using Scalars = ::testing::Types<Fp, Rational>;
TYPED_TEST_SUITE(ModuleTest, Scalars);

// Ext^i(M, N) from Hom dimensions along 0 -> Omega^i -> P_{i-1} -> Omega^{i-1} -> 0
template <class S>
Index ext_dim_oracle(const Module<S>& m, const Module<S>& n, int i) {
  if (i == 0) return hom_dim_oracle<S>(m, n);
  Module<S> prev = syzygy<S>(m, i - 1);
  auto cover = projective_cover<S>(prev);
  Module<S> cur = kernel<S>(cover.projective, cover.epi).module;
  return hom_dim_oracle<S>(cur, n) - hom_dim_oracle<S>(cover.projective, n) + hom_dim_oracle<S>(prev, n);
}

template <class S>
Module<S> conjugate(const Module<S>& m, std::mt19937_64& rng) {
  Mat<S> g;
  do {
    g = random_matrix<S>(m.field(), m.dim(), m.dim(), rng);
  } while (rank<S>(g) < m.dim());
  Mat<S> gi = *inverse<S>(g);
  std::vector<Mat<S>> act;
  for (const auto& a : m.actions()) act.push_back(mul<S>(g, mul<S>(a, gi)));
  return Module<S>(m.algebra(), act, m.dim());
}

template <class S>
std::vector<Module<S>> t2_zoo() {
  auto a = t2<S>();
  auto p1 = projective_module<S>(a, 0), p2 = projective_module<S>(a, 1);
  auto s1 = simple_module<S>(a, 0), s2 = simple_module<S>(a, 1);
  return {p1, p2, s1, s2, regular_module<S>(a), direct_sum<S>(s1, p1), direct_sum<S>({s1, s1, p2})};
}

TYPED_TEST(ModuleTest, StandardModulesAreValid) {
  using S = TypeParam;
  for (const auto& m : t2_zoo<S>()) EXPECT_NO_THROW(validate_module(m));
  auto a = dual_numbers<S>();
  EXPECT_NO_THROW(validate_module(regular_module<S>(a)));
  EXPECT_NO_THROW(validate_module(simple_module<S>(a, 0)));
}

TYPED_TEST(ModuleTest, FromGenerators) {
  using S = TypeParam;
  auto a = t2<S>();
  // P_1: e_1 -> span(v1), a_1 sends v1 to v2
  std::vector<std::pair<Vec<S>, Mat<S>>> gens = {
      {a->idempotent(0), mat<S>({{1, 0}, {0, 0}})},
      {a->idempotent(1), mat<S>({{0, 0}, {0, 1}})},
      {a->basis_vector(2), mat<S>({{0, 0}, {1, 0}})},
  };
  auto m = module_from_generators<S>(a, 2, gens);
  EXPECT_EQ(find_iso<S>(m, projective_module<S>(a, 0), 1).kind, IsoResult<S>::Kind::Found);

  auto d = dual_numbers<S>();
  std::vector<std::pair<Vec<S>, Mat<S>>> bad = {{d->basis_vector(1), mat<S>({{1}})}};
  EXPECT_THROW(module_from_generators<S>(d, 1, bad), InvalidModule);
}

TYPED_TEST(ModuleTest, TopAndCover) {
  using S = TypeParam;
  auto a = t2<S>();
  auto p1 = projective_module<S>(a, 0);
  EXPECT_EQ(top<S>(p1), (std::vector<Index>{1, 0}));
  EXPECT_EQ(top<S>(regular_module<S>(a)), (std::vector<Index>{1, 1}));
  auto c = projective_cover<S>(simple_module<S>(a, 0));
  EXPECT_EQ(c.projective.dim(), 2);
  EXPECT_TRUE(is_homomorphism<S>(c.projective, simple_module<S>(a, 0), c.epi));
}

TYPED_TEST(ModuleTest, HomDimensionsMatchIntertwinerOracle) {
  using S = TypeParam;
  auto zoo = t2_zoo<S>();
  for (const auto& m : zoo)
    for (const auto& n : zoo) {
      auto h = hom_space<S>(m, n);
      ASSERT_EQ(static_cast<Index>(h.size()), hom_dim_oracle<S>(m, n));
      for (const auto& f : h) ASSERT_TRUE(is_homomorphism<S>(m, n, f));
    }
  auto e = enveloping<S>(dual_numbers<S>());
  std::vector<Module<S>> ez = {regular_module<S>(e), simple_module<S>(e, 0), regular_bimodule<S>(dual_numbers<S>())};
  ez.push_back(syzygy<S>(ez[2], 1));
  for (const auto& m : ez)
    for (const auto& n : ez) ASSERT_EQ(static_cast<Index>(hom_space<S>(m, n).size()), hom_dim_oracle<S>(m, n));
}

TYPED_TEST(ModuleTest, ProjectiveDimensions) {
  using S = TypeParam;
  auto a = t2<S>();
  EXPECT_EQ(projective_dimension<S>(simple_module<S>(a, 0), 10).value, 1);
  auto p2 = projective_dimension<S>(simple_module<S>(a, 1), 10);
  EXPECT_EQ(p2.kind, ProjDim::Kind::Finite);
  EXPECT_EQ(p2.value, 0);
  EXPECT_EQ(projective_dimension<S>(zero_module<S>(a), 10).kind, ProjDim::Kind::Zero);

  auto d = dual_numbers<S>();
  auto pk = projective_dimension<S>(simple_module<S>(d, 0), 10);
  EXPECT_EQ(pk.kind, ProjDim::Kind::ExceedsCutoff);
  ASSERT_TRUE(pk.periodic);
  EXPECT_EQ(pk.periodic->first, 0);
  EXPECT_EQ(pk.periodic->second, 1);
  EXPECT_EQ(syzygy<S>(simple_module<S>(d, 0), 5).dim(), 1);
}

TYPED_TEST(ModuleTest, CubicSyzygyHasPeriodTwo) {
  using S = TypeParam;
  auto a = truncated_cubic<S>();
  auto k = simple_module<S>(a, 0);
  auto o1 = syzygy<S>(k, 1), o2 = syzygy<S>(k, 2);
  EXPECT_EQ(o1.dim(), 2);
  EXPECT_EQ(o2.dim(), 1);
  EXPECT_EQ(find_iso<S>(o2, k, 3).kind, IsoResult<S>::Kind::Found);
  EXPECT_EQ(find_iso<S>(o1, k, 3).kind, IsoResult<S>::Kind::Absent);
  auto pd = projective_dimension<S>(k, 10);
  ASSERT_TRUE(pd.periodic);
  EXPECT_EQ(pd.periodic->second, 2);
}

TYPED_TEST(ModuleTest, IsoDetection) {
  using S = TypeParam;
  std::mt19937_64 rng(5);
  for (const auto& m : t2_zoo<S>()) {
    auto c = conjugate<S>(m, rng);
    auto r = find_iso<S>(m, c, 17);
    ASSERT_EQ(r.kind, IsoResult<S>::Kind::Found);
    ASSERT_TRUE(is_homomorphism<S>(m, c, r.iso));
  }
  auto a = t2<S>();
  EXPECT_EQ(find_iso<S>(simple_module<S>(a, 0), simple_module<S>(a, 1), 1).kind, IsoResult<S>::Kind::Absent);
  // same dimension, different top
  auto x = direct_sum<S>(simple_module<S>(a, 0), simple_module<S>(a, 1));
  EXPECT_EQ(find_iso<S>(x, projective_module<S>(a, 0), 1).kind, IsoResult<S>::Kind::Absent);
}

TYPED_TEST(ModuleTest, StripProjectives) {
  using S = TypeParam;
  auto a = t2<S>();
  auto m = direct_sum<S>({simple_module<S>(a, 0), projective_module<S>(a, 0), projective_module<S>(a, 1)});
  auto s = strip_projectives<S>(m);
  EXPECT_EQ(s.core.dim(), 1);
  EXPECT_EQ(s.removed, (std::vector<Index>{1, 1}));
  EXPECT_EQ(find_iso<S>(s.core, simple_module<S>(a, 0), 1).kind, IsoResult<S>::Kind::Found);

  auto d = dual_numbers<S>();
  auto k = simple_module<S>(d, 0);
  EXPECT_EQ(stable_iso<S>(direct_sum<S>(k, regular_module<S>(d)), k, 1), Tri::True);
  EXPECT_EQ(stable_iso<S>(regular_module<S>(d), zero_module<S>(d), 1), Tri::True);
  EXPECT_EQ(stable_iso<S>(k, zero_module<S>(d), 1), Tri::False);
}

TYPED_TEST(ModuleTest, Indecomposability) {
  using S = TypeParam;
  auto a = t2<S>();
  EXPECT_TRUE(is_indecomposable<S>(projective_module<S>(a, 0)));
  EXPECT_TRUE(is_indecomposable<S>(simple_module<S>(a, 0)));
  EXPECT_FALSE(is_indecomposable<S>(regular_module<S>(a)));
  EXPECT_FALSE(is_indecomposable<S>(zero_module<S>(a)));
  auto d = dual_numbers<S>();
  EXPECT_FALSE(is_indecomposable<S>(direct_sum<S>(simple_module<S>(d, 0), simple_module<S>(d, 0))));
  EXPECT_TRUE(is_indecomposable<S>(regular_module<S>(d)));
}

TYPED_TEST(ModuleTest, ExtMatchesHomOracle) {
  using S = TypeParam;
  auto zoo = t2_zoo<S>();
  for (const auto& m : zoo)
    for (const auto& n : zoo)
      for (int i = 0; i <= 2; ++i) ASSERT_EQ(ext_dim<S>(m, n, i), ext_dim_oracle<S>(m, n, i));
  auto a = t2<S>();
  EXPECT_EQ(ext_dim<S>(simple_module<S>(a, 0), simple_module<S>(a, 1), 1), 1);
  auto d = dual_numbers<S>();
  auto k = simple_module<S>(d, 0);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(ext_dim<S>(k, k, i), 1);
}

TYPED_TEST(ModuleTest, MismatchedAlgebrasThrow) {
  using S = TypeParam;
  EXPECT_THROW(hom_space<S>(simple_module<S>(t2<S>(), 0), simple_module<S>(dual_numbers<S>(), 0)), AlgebraMismatch);
}

}  // namespace
}  // namespace singeq::testing
