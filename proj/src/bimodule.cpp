#include "singeq/bimodule.hpp"

#include <map>
#include <mutex>

#include "instantiate.hpp"

namespace singeq {

namespace {

template <class S>
Mat<S> combine(const std::vector<Mat<S>>& mats, const Vec<S>& x, Index dim) {
  Mat<S> out = Mat<S>::Zero(dim, dim);
  for (Index i = 0; i < x.size(); ++i)
    if (!is_zero(x(i))) out += x(i) * mats[i];
  return out;
}

template <class S>
AlgebraPtr<S> ground_field(const FieldSpec& f) {
  static std::mutex mu;
  static std::map<std::pair<int, std::uint32_t>, AlgebraPtr<S>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(static_cast<int>(f.kind), f.p);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto k = field_algebra<S>(f);
  cache[key] = k;
  return k;
}

template <class S>
Vec<S> flatten(const Mat<S>& m) {
  return Eigen::Map<const Vec<S>>(m.data(), m.size());
}

}  // namespace

template <class S>
Bimod<S> as_bimodule(const Module<S>& m) {
  auto f = tensor_factors<S>(m.algebra());
  if (!f) throw TagMismatch("module is not over a tensor algebra, so it has no bimodule structure");
  return {m, f->first, opposite<S>(f->second)};
}

template <class S>
Bimod<S> as_left(const Module<S>& m) {
  return {m, m.algebra(), nullptr};
}

template <class S>
Bimod<S> as_right(const Module<S>& m) {
  return {m, nullptr, opposite<S>(m.algebra())};
}

template <class S>
AlgebraPtr<S> sides_algebra(const FieldSpec& f, const AlgebraPtr<S>& left, const AlgebraPtr<S>& right) {
  if (left && right) return tensor_algebra<S>(left, opposite<S>(right));
  if (left) return left;
  if (right) return opposite<S>(right);
  return ground_field<S>(f);
}

template <class S>
std::vector<Mat<S>> left_actions(const Bimod<S>& b) {
  if (!b.left) throw TagMismatch("no left action");
  if (!b.right) return b.module.actions();
  const Index nl = b.left->dim(), nr = b.right->dim(), d = b.module.dim();
  const Vec<S>& u = b.right->unit();
  std::vector<Mat<S>> out;
  for (Index i = 0; i < nl; ++i) {
    Mat<S> m = Mat<S>::Zero(d, d);
    for (Index j = 0; j < nr; ++j)
      if (!is_zero(u(j))) m += u(j) * b.module.action(i * nr + j);
    out.push_back(std::move(m));
  }
  return out;
}

template <class S>
std::vector<Mat<S>> right_actions(const Bimod<S>& b) {
  if (!b.right) throw TagMismatch("no right action");
  if (!b.left) return b.module.actions();
  const Index nl = b.left->dim(), nr = b.right->dim(), d = b.module.dim();
  const Vec<S>& u = b.left->unit();
  std::vector<Mat<S>> out;
  for (Index j = 0; j < nr; ++j) {
    Mat<S> m = Mat<S>::Zero(d, d);
    for (Index i = 0; i < nl; ++i)
      if (!is_zero(u(i))) m += u(i) * b.module.action(i * nr + j);
    out.push_back(std::move(m));
  }
  return out;
}

template <class S>
Bimod<S> from_sides(const FieldSpec& f, const AlgebraPtr<S>& left, const AlgebraPtr<S>& right, Index dim,
                    const std::vector<Mat<S>>& left_act, const std::vector<Mat<S>>& right_act) {
  auto alg = sides_algebra<S>(f, left, right);
  std::vector<Mat<S>> act;
  if (left && right) {
    for (const auto& l : left_act)
      for (const auto& r : right_act) act.push_back(mul<S>(l, r));
  } else if (left) {
    act = left_act;
  } else if (right) {
    act = right_act;
  } else {
    act.push_back(identity<S>(f, dim));
  }
  return {Module<S>(alg, std::move(act), dim), left, right};
}

template <class S>
Module<S> restrict_side(const Bimod<S>& b, Side side) {
  if (side == Side::Left) return Module<S>(b.left, left_actions<S>(b), b.module.dim());
  return Module<S>(opposite<S>(b.right), right_actions<S>(b), b.module.dim());
}

template <class S>
Module<S> restrict_side(const Module<S>& m, Side side) {
  return restrict_side<S>(as_bimodule<S>(m), side);
}

template <class S>
Module<S> regular_bimodule(const AlgebraPtr<S>& a) {
  std::vector<Mat<S>> l, r;
  for (Index i = 0; i < a->dim(); ++i) {
    l.push_back(a->left(i));
    r.push_back(a->right_matrix(a->basis_vector(i)));
  }
  auto b = from_sides<S>(a->field(), a, a, a->dim(), l, r);
  return Module<S>(enveloping<S>(a), b.module.actions(), a->dim());
}

template <class S>
Module<S> bimodule_from_hom(const AlgebraHom<S>& f) {
  std::vector<Mat<S>> l, r;
  for (Index i = 0; i < f.source->dim(); ++i) {
    Vec<S> x = f.matrix.col(i);
    l.push_back(f.target->left_matrix(x));
    r.push_back(f.target->right_matrix(x));
  }
  auto b = from_sides<S>(f.source->field(), f.source, f.source, f.target->dim(), l, r);
  return Module<S>(enveloping<S>(f.source), b.module.actions(), f.target->dim());
}

template <class S>
Bimod<S> algebra_bimodule(const AlgebraPtr<S>& p, const Mat<S>& u, const AlgebraPtr<S>& l, const Mat<S>& l_embed,
                          const AlgebraPtr<S>& r, const Mat<S>& r_embed) {
  SpanCoords<S> sc(u);
  std::vector<Mat<S>> la, ra;
  auto restricted = [&](const Mat<S>& m, const char* what) {
    Mat<S> img = mul<S>(m, u);
    if (!sc.contains(img)) throw ValidationError(std::string("subspace is not closed under ") + what);
    return sc.coords(img);
  };
  if (l)
    for (Index i = 0; i < l->dim(); ++i) la.push_back(restricted(p->left_matrix(l_embed.col(i)), "left multiplication"));
  if (r)
    for (Index j = 0; j < r->dim(); ++j) ra.push_back(restricted(p->right_matrix(r_embed.col(j)), "right multiplication"));
  return from_sides<S>(p->field(), l, r, u.cols(), la, ra);
}

template <class S>
TensorProduct<S> tensor_over(const Bimod<S>& x, const Bimod<S>& y) {
  if (!x.right || !y.left) throw TagMismatch("tensor_over: missing the middle action");
  require_same<S>(x.right, y.left, "tensor_over");
  const auto& r = x.right;
  const FieldSpec& f = r->field();
  auto xr = right_actions<S>(x);
  auto yl = left_actions<S>(y);
  const Index nv = r->num_vertices();

  TensorProduct<S> tp;
  std::vector<SpanCoords<S>> xc, yc;
  tp.offsets.push_back(0);
  for (Index v = 0; v < nv; ++v) {
    tp.x_blocks.push_back(column_space<S>(combine<S>(xr, r->idempotent(v), x.module.dim())));
    tp.y_blocks.push_back(column_space<S>(combine<S>(yl, r->idempotent(v), y.module.dim())));
    xc.emplace_back(tp.x_blocks.back());
    yc.emplace_back(tp.y_blocks.back());
    tp.offsets.push_back(tp.offsets.back() + tp.x_blocks[v].cols() * tp.y_blocks[v].cols());
  }
  const Index dv = tp.offsets.back();

  std::vector<Vec<S>> rels;
  for (const auto& ar : r->arrows()) {
    const Index s = ar.source, t = ar.target;
    const Index as = tp.x_blocks[s].cols(), bs = tp.y_blocks[s].cols();
    const Index at = tp.x_blocks[t].cols(), bt = tp.y_blocks[t].cols();
    if (at == 0 || bs == 0) continue;
    Mat<S> xg = xc[s].coords(mul<S>(combine<S>(xr, ar.element, x.module.dim()), tp.x_blocks[t]));  // as x at
    Mat<S> gy = yc[t].coords(mul<S>(combine<S>(yl, ar.element, y.module.dim()), tp.y_blocks[s]));  // bt x bs
    for (Index al = 0; al < at; ++al)
      for (Index be = 0; be < bs; ++be) {
        Vec<S> rel = Vec<S>::Zero(dv);
        for (Index k = 0; k < as; ++k) rel(tp.offsets[s] + k * bs + be) += xg(k, al);
        for (Index k = 0; k < bt; ++k) rel(tp.offsets[t] + al * bt + k) -= gy(k, be);
        rels.push_back(std::move(rel));
      }
  }
  Mat<S> relm(dv, static_cast<Index>(rels.size()));
  for (std::size_t i = 0; i < rels.size(); ++i) relm.col(i) = rels[i];
  auto q = quotient<S>(relm, dv);
  tp.projection = q.projection;
  tp.section = q.section;
  const Index dq = q.projection.rows();

  auto lift = [&](const std::vector<Mat<S>>& blocks) {
    return mul<S>(tp.projection, mul<S>(block_diag<S>(blocks), tp.section));
  };
  std::vector<Mat<S>> la, ra;
  if (x.left)
    for (const auto& l : left_actions<S>(x)) {
      std::vector<Mat<S>> blocks;
      for (Index v = 0; v < nv; ++v)
        blocks.push_back(kron<S>(xc[v].coords(mul<S>(l, tp.x_blocks[v])), identity<S>(f, tp.y_blocks[v].cols())));
      la.push_back(lift(blocks));
    }
  if (y.right)
    for (const auto& rr : right_actions<S>(y)) {
      std::vector<Mat<S>> blocks;
      for (Index v = 0; v < nv; ++v)
        blocks.push_back(kron<S>(identity<S>(f, tp.x_blocks[v].cols()), yc[v].coords(mul<S>(rr, tp.y_blocks[v]))));
      ra.push_back(lift(blocks));
    }
  tp.result = from_sides<S>(f, x.left, y.right, dq, la, ra);
  return tp;
}

template <class S>
Mat<S> tensor_maps(const TensorProduct<S>& from, const TensorProduct<S>& to, const Mat<S>& f, const Mat<S>& g) {
  std::vector<Mat<S>> blocks;
  for (std::size_t v = 0; v < from.x_blocks.size(); ++v) {
    SpanCoords<S> xc(to.x_blocks[v]), yc(to.y_blocks[v]);
    Mat<S> fv = xc.coords(mul<S>(f, from.x_blocks[v]));
    Mat<S> gv = yc.coords(mul<S>(g, from.y_blocks[v]));
    blocks.push_back(kron<S>(fv, gv));
  }
  return mul<S>(to.projection, mul<S>(block_diag<S>(blocks), from.section));
}

template <class S>
Mat<S> induced_map(const TensorProduct<S>& tp, Index target_dim,
                   const std::function<Vec<S>(const Vec<S>&, const Vec<S>&)>& value) {
  Mat<S> onv = Mat<S>::Zero(target_dim, tp.offsets.back());
  for (std::size_t v = 0; v < tp.x_blocks.size(); ++v) {
    const Index b = tp.y_blocks[v].cols();
    for (Index al = 0; al < tp.x_blocks[v].cols(); ++al)
      for (Index be = 0; be < b; ++be)
        onv.col(tp.offsets[v] + al * b + be) = value(tp.x_blocks[v].col(al), tp.y_blocks[v].col(be));
  }
  return mul<S>(onv, tp.section);
}

template <class S>
Vec<S> HomBimodule<S>::coordinates(const Mat<S>& f) const {
  return coords.coords(flatten<S>(f));
}

template <class S>
Mat<S> HomBimodule<S>::element(const Vec<S>& c) const {
  Mat<S> out = Mat<S>::Zero(y_dim, x_dim);
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (!is_zero(c(k))) out += c(k) * basis[k];
  return out;
}

template <class S>
HomBimodule<S> hom_bimodule(const Bimod<S>& x, const Bimod<S>& y) {
  if (!x.left || !y.left) throw TagMismatch("hom_bimodule: missing the left action");
  require_same<S>(x.left, y.left, "hom_bimodule");
  const FieldSpec& f = x.left->field();
  HomBimodule<S> h;
  h.x_dim = x.module.dim();
  h.y_dim = y.module.dim();
  h.basis = hom_space<S>(restrict_side<S>(x, Side::Left), restrict_side<S>(y, Side::Left));
  const Index n = static_cast<Index>(h.basis.size());
  Mat<S> flat(x.module.dim() * y.module.dim(), n);
  for (Index k = 0; k < n; ++k) flat.col(k) = flatten<S>(h.basis[k]);
  h.coords = SpanCoords<S>(flat);
  auto image = [&](const std::function<Mat<S>(const Mat<S>&)>& op) {
    Mat<S> m(n, n);
    for (Index k = 0; k < n; ++k) m.col(k) = h.coordinates(op(h.basis[k]));
    return m;
  };
  std::vector<Mat<S>> la, ra;
  if (x.right)
    for (const auto& xa : right_actions<S>(x)) la.push_back(image([&](const Mat<S>& F) { return mul<S>(F, xa); }));
  if (y.right)
    for (const auto& yc : right_actions<S>(y)) ra.push_back(image([&](const Mat<S>& F) { return mul<S>(yc, F); }));
  h.result = from_sides<S>(f, x.right, y.right, n, la, ra);
  return h;
}

template <class S>
HomBimodule<S> hom_into_regular(const Bimod<S>& x) {
  if (!x.left) throw TagMismatch("hom_into_regular: missing the left action");
  Bimod<S> b{regular_bimodule<S>(x.left), x.left, x.left};
  return hom_bimodule<S>(x, b);
}

template <class S>
Bimod<S> dual(const Bimod<S>& x) {
  std::vector<Mat<S>> la, ra;
  if (x.right)
    for (const auto& m : right_actions<S>(x)) la.push_back(m.transpose());
  if (x.left)
    for (const auto& m : left_actions<S>(x)) ra.push_back(m.transpose());
  return from_sides<S>(x.module.field(), x.right, x.left, x.module.dim(), la, ra);
}

#define SINGEQ_BIMODULE(S)                                                                                    \
  template struct HomBimodule<S>;                                                                             \
  template Bimod<S> as_bimodule<S>(const Module<S>&);                                                         \
  template Bimod<S> as_left<S>(const Module<S>&);                                                             \
  template Bimod<S> as_right<S>(const Module<S>&);                                                            \
  template AlgebraPtr<S> sides_algebra<S>(const FieldSpec&, const AlgebraPtr<S>&, const AlgebraPtr<S>&);      \
  template std::vector<Mat<S>> left_actions<S>(const Bimod<S>&);                                              \
  template std::vector<Mat<S>> right_actions<S>(const Bimod<S>&);                                             \
  template Bimod<S> from_sides<S>(const FieldSpec&, const AlgebraPtr<S>&, const AlgebraPtr<S>&, Index,        \
                                  const std::vector<Mat<S>>&, const std::vector<Mat<S>>&);                    \
  template Module<S> restrict_side<S>(const Bimod<S>&, Side);                                                 \
  template Module<S> restrict_side<S>(const Module<S>&, Side);                                                \
  template Module<S> regular_bimodule<S>(const AlgebraPtr<S>&);                                               \
  template Module<S> bimodule_from_hom<S>(const AlgebraHom<S>&);                                              \
  template Bimod<S> algebra_bimodule<S>(const AlgebraPtr<S>&, const Mat<S>&, const AlgebraPtr<S>&, const Mat<S>&, \
                                        const AlgebraPtr<S>&, const Mat<S>&);                                   \
  template TensorProduct<S> tensor_over<S>(const Bimod<S>&, const Bimod<S>&);                                 \
  template Mat<S> tensor_maps<S>(const TensorProduct<S>&, const TensorProduct<S>&, const Mat<S>&,             \
                                 const Mat<S>&);                                                              \
  template Mat<S> induced_map<S>(const TensorProduct<S>&, Index,                                              \
                                 const std::function<Vec<S>(const Vec<S>&, const Vec<S>&)>&);                 \
  template HomBimodule<S> hom_bimodule<S>(const Bimod<S>&, const Bimod<S>&);                                  \
  template HomBimodule<S> hom_into_regular<S>(const Bimod<S>&);                                               \
  template Bimod<S> dual<S>(const Bimod<S>&);

SINGEQ_FOR_EACH_SCALAR(SINGEQ_BIMODULE)

}  // namespace singeq
