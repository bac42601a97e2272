#pragma once

#include <functional>

#include "singeq/module.hpp"

namespace singeq {

// A module read as an L-R bimodule. The underlying module lives over
// L (x) R^op, over L alone, over R^op alone, or over the ground field,
// according to which sides are present. `right` is R itself, not R^op.
template <class S>
struct Bimod {
  Module<S> module;
  AlgebraPtr<S> left;
  AlgebraPtr<S> right;
};

enum class Side { Left, Right };

// module over tensor(L, R^op)
template <class S>
Bimod<S> as_bimodule(const Module<S>& m);

template <class S>
Bimod<S> as_left(const Module<S>& m);

// module over R^op read as a right R-module
template <class S>
Bimod<S> as_right(const Module<S>& m);

// the algebra a module with these sides lives over
template <class S>
AlgebraPtr<S> sides_algebra(const FieldSpec& f, const AlgebraPtr<S>& left, const AlgebraPtr<S>& right);

// action matrices of the left (resp. right) algebra's basis
template <class S>
std::vector<Mat<S>> left_actions(const Bimod<S>& b);

template <class S>
std::vector<Mat<S>> right_actions(const Bimod<S>& b);

// builds the module from commuting left and right actions
template <class S>
Bimod<S> from_sides(const FieldSpec& f, const AlgebraPtr<S>& left, const AlgebraPtr<S>& right, Index dim,
                    const std::vector<Mat<S>>& left_act, const std::vector<Mat<S>>& right_act);

// Restriction of a bimodule to one side. Side::Right yields a module over R^op.
template <class S>
Module<S> restrict_side(const Module<S>& m, Side side);

template <class S>
Module<S> restrict_side(const Bimod<S>& b, Side side);

template <class S>
Module<S> regular_bimodule(const AlgebraPtr<S>& a);

// B as an A-A bimodule through an algebra map f: A -> B
template <class S>
Module<S> bimodule_from_hom(const AlgebraHom<S>& f);

// A subspace with basis u of the algebra p, closed under left multiplication
// by the image of l_embed and right multiplication by the image of r_embed,
// read as an l-r bimodule. Either side may be absent.
template <class S>
Bimod<S> algebra_bimodule(const AlgebraPtr<S>& p, const Mat<S>& u, const AlgebraPtr<S>& l, const Mat<S>& l_embed,
                          const AlgebraPtr<S>& r, const Mat<S>& r_embed);

// X (x)_R Y for an L-R bimodule X and an R-T bimodule Y. The tensor is a
// quotient of V = sum_v X e_v (x) e_v Y.
template <class S>
struct TensorProduct {
  Bimod<S> result;
  std::vector<Mat<S>> x_blocks;  // basis of X e_v
  std::vector<Mat<S>> y_blocks;  // basis of e_v Y
  std::vector<Index> offsets;    // of each vertex block in V
  Mat<S> projection;             // V -> result
  Mat<S> section;                // result -> V
};

template <class S>
TensorProduct<S> tensor_over(const Bimod<S>& x, const Bimod<S>& y);

// f (x) g : X (x) Y -> X' (x) Y'
template <class S>
Mat<S> tensor_maps(const TensorProduct<S>& from, const TensorProduct<S>& to, const Mat<S>& f, const Mat<S>& g);

// The map X (x) Y -> Z induced by a balanced bilinear map given on basis
// pairs: value(x_col, y_col) returns a vector in Z.
template <class S>
Mat<S> induced_map(const TensorProduct<S>& tp, Index target_dim,
                   const std::function<Vec<S>(const Vec<S>&, const Vec<S>&)>& value);

// Hom_B(X, Y) for B-A bimodule X and B-C bimodule Y, as an A-C bimodule
// with (a f c)(x) = f(x a) c.
template <class S>
struct HomBimodule {
  Bimod<S> result;
  std::vector<Mat<S>> basis;  // dim Y x dim X
  Index x_dim = 0;
  Index y_dim = 0;
  SpanCoords<S> coords;       // on column-major flattened matrices
  Vec<S> coordinates(const Mat<S>& f) const;
  Mat<S> element(const Vec<S>& c) const;
};

template <class S>
HomBimodule<S> hom_bimodule(const Bimod<S>& x, const Bimod<S>& y);

// Hom_B(X, B) for a B-A bimodule X, an A-B bimodule
template <class S>
HomBimodule<S> hom_into_regular(const Bimod<S>& x);

// Hom_k(X, k): an L-R bimodule becomes an R-L bimodule
template <class S>
Bimod<S> dual(const Bimod<S>& x);

}  // namespace singeq
