#pragma once

#include <random>

#include "singeq/complex.hpp"

namespace singeq::testing {

template <class S>
FieldSpec field_for() {
  if constexpr (std::is_same_v<S, Fp>) return FieldSpec::prime(32003);
  else return FieldSpec::rational();
}

template <class S>
S sc(long long v) {
  return ScalarTraits<S>::from_int(field_for<S>(), v);
}

template <class S>
Mat<S> mat(std::initializer_list<std::initializer_list<long long>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r ? static_cast<Index>(rows.begin()->size()) : 0;
  Mat<S> m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (long long v : row) m(i, j++) = sc<S>(v);
    ++i;
  }
  return m;
}

inline QuiverPresentation loop_quiver(int nilpotency) {
  QuiverPresentation q;
  q.vertices = {"1"};
  q.arrows = {{"x", "1", "1"}};
  RelationTerm t;
  t.path.assign(nilpotency, "x");
  q.relations = {{{t}}};
  return q;
}

inline QuiverPresentation linear_quiver(int n) {
  QuiverPresentation q;
  for (int v = 1; v <= n; ++v) q.vertices.push_back(std::to_string(v));
  for (int v = 1; v < n; ++v) q.arrows.push_back({"a" + std::to_string(v), std::to_string(v), std::to_string(v + 1)});
  return q;
}

// k[x]/(x^2)
template <class S>
AlgebraPtr<S> dual_numbers() {
  return algebra_from_quiver<S>(field_for<S>(), loop_quiver(2));
}

// k[x]/(x^3)
template <class S>
AlgebraPtr<S> truncated_cubic() {
  return algebra_from_quiver<S>(field_for<S>(), loop_quiver(3));
}

// path algebra of 1 -> 2
template <class S>
AlgebraPtr<S> t2() {
  return algebra_from_quiver<S>(field_for<S>(), linear_quiver(2));
}

template <class S>
AlgebraPtr<S> ground() {
  return field_algebra<S>(field_for<S>());
}

// Hom_A(m, n) by solving rho_N(b) F = F rho_M(b) for every basis element.
template <class S>
Index hom_dim_oracle(const Module<S>& m, const Module<S>& n) {
  const Index dm = m.dim(), dn = n.dim();
  if (dm == 0 || dn == 0) return 0;
  const auto& a = m.algebra();
  Mat<S> eq = Mat<S>::Zero(a->dim() * dn * dm, dn * dm);
  // unknown F(i, j) at column j * dn + i
  for (Index b = 0; b < a->dim(); ++b)
    for (Index i = 0; i < dn; ++i)
      for (Index j = 0; j < dm; ++j) {
        const Index row = b * dn * dm + j * dn + i;
        for (Index k = 0; k < dn; ++k) eq(row, j * dn + k) += n.action(b)(i, k);
        for (Index k = 0; k < dm; ++k) eq(row, k * dn + i) -= m.action(b)(k, j);
      }
  return dn * dm - rank<S>(eq);
}

template <class S>
Vec<S> random_vec(Index n, std::mt19937_64& rng) {
  return random_matrix<S>(field_for<S>(), n, 1, rng).col(0);
}

// P1 -> X0 over A^e with P1 projective and X0 one of: projective, A, A + P
template <class S>
Complex<S> random_env_complex(const AlgebraPtr<S>& a, std::mt19937_64& rng) {
  auto env = enveloping<S>(a);
  const Index nv = env->num_vertices();
  Module<S> target;
  switch (rng() % 3) {
    case 0: target = projective_sum<S>(env, {static_cast<Index>(rng() % nv), static_cast<Index>(rng() % nv)}); break;
    case 1: target = regular_bimodule<S>(a); break;
    default: target = direct_sum<S>(regular_bimodule<S>(a), projective_module<S>(env, rng() % nv)); break;
  }
  std::vector<Index> vs(1 + rng() % 2);
  for (auto& v : vs) v = rng() % nv;
  Mat<S> images(target.dim(), static_cast<Index>(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i)
    images.col(i) = mul<S>(target.act(env->idempotent(vs[i])), Mat<S>(random_vec<S>(target.dim(), rng))).col(0);
  Mat<S> d = map_from_projective<S>(env, vs, images, target);
  const int lo = static_cast<int>(rng() % 3) - 1;
  return Complex<S>(env, lo, {target, projective_sum<S>(env, vs)}, {Mat<S>(), d});
}

}  // namespace singeq::testing
