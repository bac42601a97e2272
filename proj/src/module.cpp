#include "singeq/module.hpp"

#include <random>

#include "instantiate.hpp"

namespace singeq {

const char* to_string(Tri t) {
  switch (t) {
    case Tri::True:
      return "true";
    case Tri::False:
      return "false";
    default:
      return "unknown";
  }
}

std::string ProjDim::describe() const {
  switch (kind) {
    case Kind::Zero:
      return "zero module";
    case Kind::Finite:
      return std::to_string(value);
    default:
      return periodic ? "infinite" : "exceeds cutoff " + std::to_string(value);
  }
}

template <class S>
Module<S>::Module(AlgebraPtr<S> alg, std::vector<Mat<S>> action, Index dim) : alg_(std::move(alg)), dim_(dim) {
  if (static_cast<Index>(action.size()) != alg_->dim())
    throw ShapeMismatch("module needs one action matrix per basis element");
  auto rep = std::make_shared<Rep>();
  for (auto& m : action) {
    if (m.rows() != dim || m.cols() != dim) throw ShapeMismatch("action matrix has wrong shape");
    bind<S>(m, alg_->field());
  }
  rep->action = std::move(action);
  for (Index v = 0; v < alg_->num_vertices(); ++v) {
    Mat<S> e = Mat<S>::Zero(dim, dim);
    const Vec<S>& ev = alg_->idempotent(v);
    for (Index i = 0; i < ev.size(); ++i)
      if (!is_zero(ev(i))) e += ev(i) * rep->action[i];
    rep->vertex_space.push_back(column_space<S>(e));
    rep->idempotent.push_back(std::move(e));
  }
  rep_ = std::move(rep);
}

template <class S>
Mat<S> Module<S>::act(const Vec<S>& a) const {
  Mat<S> m = Mat<S>::Zero(dim_, dim_);
  for (Index i = 0; i < a.size(); ++i)
    if (!is_zero(a(i))) m += a(i) * rep_->action[i];
  return m;
}

template <class S>
void validate_module(const Module<S>& m) {
  const auto& a = m.algebra();
  if (!equal<S>(m.act(a->unit()), identity<S>(a->field(), m.dim())))
    throw InvalidModule("the unit does not act as the identity");
  for (Index i = 0; i < a->dim(); ++i)
    for (Index j = 0; j < a->dim(); ++j) {
      Mat<S> lhs = mul<S>(m.action(i), m.action(j));
      if (!equal<S>(lhs, m.act(a->left(i).col(j))))
        throw InvalidModule("action is not multiplicative at (" + a->label(i) + ", " + a->label(j) + ")");
    }
}

template <class S>
Module<S> module_from_generators(const AlgebraPtr<S>& a, Index dim,
                                 const std::vector<std::pair<Vec<S>, Mat<S>>>& gens) {
  const Index n = a->dim();
  std::vector<Vec<S>> elems{a->unit()};
  std::vector<Mat<S>> mats{identity<S>(a->field(), dim)};
  Mat<S> span = Mat<S>(a->unit());
  auto try_add = [&](const Vec<S>& x, const Mat<S>& m) {
    if (x.size() != n || m.rows() != dim || m.cols() != dim) throw ShapeMismatch("generator action has wrong shape");
    Mat<S> ext(n, span.cols() + 1);
    ext << span, x;
    if (rank<S>(ext) == span.cols()) return false;
    span = ext;
    elems.push_back(x);
    mats.push_back(m);
    return true;
  };
  for (const auto& [x, m] : gens) try_add(x, m);
  for (std::size_t k = 0; k < elems.size() && span.cols() < n; ++k)
    for (const auto& [g, gm] : gens) {
      Vec<S> y = a->product(g, elems[k]);
      Mat<S> ym = mul<S>(gm, mats[k]);
      try_add(y, ym);
    }
  if (span.cols() < n) throw InvalidModule("given actions do not generate the algebra");
  Mat<S> inv = *inverse<S>(span);
  std::vector<Mat<S>> action;
  for (Index i = 0; i < n; ++i) {
    Mat<S> r = Mat<S>::Zero(dim, dim);
    for (Index k = 0; k < n; ++k)
      if (!is_zero(inv(k, i))) r += inv(k, i) * mats[k];
    action.push_back(std::move(r));
  }
  Module<S> out(a, std::move(action), dim);
  // the action on every listed element must match what the closure produced
  for (const auto& [x, m] : gens)
    if (!equal<S>(out.act(x), m)) throw InvalidModule("given actions are inconsistent with the algebra relations");
  validate_module(out);
  return out;
}

template <class S>
Module<S> regular_module(const AlgebraPtr<S>& a) {
  std::vector<Mat<S>> act;
  for (Index i = 0; i < a->dim(); ++i) act.push_back(a->left(i));
  return Module<S>(a, std::move(act), a->dim());
}

template <class S>
Module<S> projective_module(const AlgebraPtr<S>& a, Index v) {
  const auto& p = a->projective(v);
  std::vector<Mat<S>> act;
  for (Index i = 0; i < a->dim(); ++i) act.push_back(p.coords.coords(mul<S>(a->left(i), p.basis)));
  return Module<S>(a, std::move(act), p.basis.cols());
}

template <class S>
Module<S> projective_sum(const AlgebraPtr<S>& a, const std::vector<Index>& vertices) {
  std::vector<Module<S>> parts;
  for (Index v : vertices) parts.push_back(projective_module<S>(a, v));
  if (parts.empty()) return zero_module<S>(a);
  return direct_sum<S>(parts);
}

template <class S>
std::vector<Index> summand_offsets(const AlgebraPtr<S>& a, const std::vector<Index>& vertices) {
  std::vector<Index> off;
  Index at = 0;
  for (Index v : vertices) {
    off.push_back(at);
    at += a->projective(v).basis.cols();
  }
  off.push_back(at);
  return off;
}

template <class S>
Module<S> simple_module(const AlgebraPtr<S>& a, Index v) {
  std::vector<Mat<S>> act;
  for (Index i = 0; i < a->dim(); ++i) {
    Mat<S> m(1, 1);
    m(0, 0) = a->semisimple()(v, i);
    act.push_back(std::move(m));
  }
  return Module<S>(a, std::move(act), 1);
}

template <class S>
Module<S> zero_module(const AlgebraPtr<S>& a) {
  return Module<S>(a, std::vector<Mat<S>>(a->dim(), Mat<S>(0, 0)), 0);
}

template <class S>
Module<S> direct_sum(const std::vector<Module<S>>& parts) {
  if (parts.empty()) throw ShapeMismatch("direct sum of nothing");
  const auto& a = parts[0].algebra();
  Index dim = 0;
  for (const auto& p : parts) {
    require_same<S>(a, p.algebra(), "direct_sum");
    dim += p.dim();
  }
  std::vector<Mat<S>> act;
  for (Index i = 0; i < a->dim(); ++i) {
    std::vector<Mat<S>> blocks;
    for (const auto& p : parts) blocks.push_back(p.action(i));
    act.push_back(block_diag<S>(blocks));
  }
  return Module<S>(a, std::move(act), dim);
}

template <class S>
Module<S> restrict_along(const Module<S>& m, const AlgebraHom<S>& f) {
  require_same<S>(m.algebra(), f.target, "restrict_along");
  std::vector<Mat<S>> act;
  for (Index i = 0; i < f.source->dim(); ++i) act.push_back(m.act(f.matrix.col(i)));
  return Module<S>(f.source, std::move(act), m.dim());
}

template <class S>
bool is_homomorphism(const Module<S>& source, const Module<S>& target, const Mat<S>& f) {
  require_same<S>(source.algebra(), target.algebra(), "is_homomorphism");
  if (f.rows() != target.dim() || f.cols() != source.dim()) return false;
  for (Index i = 0; i < source.algebra()->dim(); ++i)
    if (!equal<S>(mul<S>(target.action(i), f), mul<S>(f, source.action(i)))) return false;
  return true;
}

template <class S>
Module<S> submodule(const Module<S>& m, const Mat<S>& u) {
  if (u.cols() == 0) return zero_module<S>(m.algebra());
  SpanCoords<S> sc(u);
  std::vector<Mat<S>> act;
  for (Index i = 0; i < m.algebra()->dim(); ++i) act.push_back(sc.coords(mul<S>(m.action(i), u)));
  return Module<S>(m.algebra(), std::move(act), u.cols());
}

template <class S>
QuotientModule<S> quotient_module(const Module<S>& m, const Mat<S>& u) {
  auto q = quotient<S>(u, m.dim());
  std::vector<Mat<S>> act;
  for (Index i = 0; i < m.algebra()->dim(); ++i) act.push_back(mul<S>(q.projection, mul<S>(m.action(i), q.section)));
  Index d = q.projection.rows();
  return {Module<S>(m.algebra(), std::move(act), d), std::move(q.projection), std::move(q.section)};
}

template <class S>
KernelModule<S> kernel(const Module<S>& source, const Mat<S>& f) {
  Mat<S> k = kernel_basis<S>(f);
  bind<S>(k, source.field());
  return {submodule<S>(source, k), k};
}

template <class S>
QuotientModule<S> cokernel(const Module<S>& target, const Mat<S>& f) {
  return quotient_module<S>(target, column_space<S>(f));
}

template <class S>
Mat<S> radical_of(const Module<S>& m) {
  const auto& a = m.algebra();
  std::vector<Mat<S>> parts;
  for (const auto& ar : a->arrows()) parts.push_back(m.act(ar.element));
  if (parts.empty() || m.dim() == 0) return Mat<S>(m.dim(), 0);
  return column_space<S>(hcat<S>(parts, m.dim()));
}

template <class S>
std::vector<Index> top(const Module<S>& m) {
  const auto& a = m.algebra();
  Mat<S> rm = radical_of<S>(m);
  std::vector<Index> out;
  for (Index v = 0; v < a->num_vertices(); ++v)
    out.push_back(m.vertex_space(v).cols() - rank<S>(mul<S>(m.idempotent_action(v), rm)));
  return out;
}

template <class S>
Mat<S> map_from_projective(const AlgebraPtr<S>& a, const std::vector<Index>& vertices, const Mat<S>& images,
                           const Module<S>& n) {
  auto off = summand_offsets<S>(a, vertices);
  Mat<S> out = Mat<S>::Zero(n.dim(), off.back());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const auto& p = a->projective(vertices[i]);
    Mat<S> img = images.col(i);
    for (std::size_t r = 0; r < p.from_basis.size(); ++r)
      out.col(off[i] + r) = mul<S>(n.action(p.from_basis[r]), img).col(0);
  }
  return out;
}

template <class S>
ProjectiveCover<S> projective_cover(const Module<S>& m) {
  const auto& a = m.algebra();
  Mat<S> rm = radical_of<S>(m);
  ProjectiveCover<S> c;
  std::vector<Vec<S>> gens;
  for (Index v = 0; v < a->num_vertices(); ++v) {
    const Mat<S>& em = m.vertex_space(v);
    if (em.cols() == 0) continue;
    Mat<S> erm = column_space<S>(mul<S>(m.idempotent_action(v), rm));
    Mat<S> both = hcat<S>({erm, em}, m.dim());
    for (Index col : independent_columns<S>(both))
      if (col >= erm.cols()) {
        c.vertices.push_back(v);
        gens.push_back(both.col(col));
      }
  }
  c.generators = Mat<S>(m.dim(), static_cast<Index>(gens.size()));
  for (std::size_t i = 0; i < gens.size(); ++i) c.generators.col(i) = gens[i];
  c.projective = projective_sum<S>(a, c.vertices);
  c.epi = map_from_projective<S>(a, c.vertices, c.generators, m);
  return c;
}

template <class S>
Module<S> syzygy(const Module<S>& m, int n) {
  Module<S> cur = m;
  for (int i = 0; i < n; ++i) {
    auto c = projective_cover<S>(cur);
    cur = kernel<S>(c.projective, c.epi).module;
  }
  return cur;
}

template <class S>
bool is_projective(const Module<S>& m) {
  return projective_cover<S>(m).projective.dim() == m.dim();
}

template <class S>
ProjDim projective_dimension(const Module<S>& m, int cutoff, std::uint64_t seed) {
  ProjDim out;
  if (m.dim() == 0) return out;
  std::vector<Module<S>> syz{m};
  std::vector<std::vector<Index>> tops{top<S>(m)};
  for (int n = 0; n <= cutoff; ++n) {
    auto c = projective_cover<S>(syz.back());
    if (c.projective.dim() == syz.back().dim()) {
      out.kind = ProjDim::Kind::Finite;
      out.value = n;
      return out;
    }
    Module<S> next = kernel<S>(c.projective, c.epi).module;
    auto t = top<S>(next);
    for (int i = 0; i <= n; ++i) {
      if (syz[i].dim() != next.dim() || tops[i] != t) continue;
      if (find_iso<S>(syz[i], next, seed).kind == IsoResult<S>::Kind::Found) {
        out.kind = ProjDim::Kind::ExceedsCutoff;
        out.value = cutoff;
        out.periodic = Periodicity{i, n + 1};
        return out;
      }
    }
    syz.push_back(std::move(next));
    tops.push_back(std::move(t));
  }
  out.kind = ProjDim::Kind::ExceedsCutoff;
  out.value = cutoff;
  return out;
}

template <class S>
std::vector<Mat<S>> hom_space(const Module<S>& m, const Module<S>& n) {
  require_same<S>(m.algebra(), n.algebra(), "hom_space");
  std::vector<Mat<S>> out;
  if (m.dim() == 0 || n.dim() == 0) return out;
  const auto& a = m.algebra();
  auto cover = projective_cover<S>(m);
  Mat<S> rel = kernel_basis<S>(cover.epi);
  auto off = summand_offsets<S>(a, cover.vertices);
  const std::size_t t = cover.vertices.size();

  // unknowns: the image of each generator, inside e_v N
  std::vector<Index> uoff{0};
  for (Index v : cover.vertices) uoff.push_back(uoff.back() + n.vertex_space(v).cols());
  const Index nu = uoff.back();
  if (nu == 0) return out;

  // blocks[i][r] = rho_N(b_r) E_v applied to the unknowns of generator i
  std::vector<std::vector<Mat<S>>> blocks(t);
  for (std::size_t i = 0; i < t; ++i) {
    const auto& p = a->projective(cover.vertices[i]);
    const Mat<S>& ev = n.vertex_space(cover.vertices[i]);
    for (Index b : p.from_basis) blocks[i].push_back(mul<S>(n.action(b), ev));
  }

  Mat<S> eq = Mat<S>::Zero(rel.cols() * n.dim(), nu);
  for (Index k = 0; k < rel.cols(); ++k)
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t r = 0; r < blocks[i].size(); ++r) {
        const S& c = rel(off[i] + r, k);
        if (is_zero(c)) continue;
        eq.block(k * n.dim(), uoff[i], n.dim(), uoff[i + 1] - uoff[i]) += c * blocks[i][r];
      }
  Mat<S> sols = kernel_basis<S>(eq);
  if (sols.cols() == 0) return out;

  Mat<S> section = solve<S>(cover.epi, identity<S>(a->field(), m.dim()))->particular;
  for (Index s = 0; s < sols.cols(); ++s) {
    Mat<S> phi = Mat<S>::Zero(n.dim(), off.back());
    for (std::size_t i = 0; i < t; ++i) {
      Mat<S> y = sols.block(uoff[i], s, uoff[i + 1] - uoff[i], 1);
      for (std::size_t r = 0; r < blocks[i].size(); ++r) phi.col(off[i] + r) = mul<S>(blocks[i][r], y).col(0);
    }
    Mat<S> f = mul<S>(phi, section);
    bind<S>(f, a->field());
    out.push_back(std::move(f));
  }
  return out;
}

template <class S>
IsoResult<S> find_iso(const Module<S>& m, const Module<S>& n, std::uint64_t seed, int trials) {
  using K = typename IsoResult<S>::Kind;
  require_same<S>(m.algebra(), n.algebra(), "find_iso");
  IsoResult<S> out;
  if (m.dim() != n.dim()) {
    out.kind = K::Absent;
    return out;
  }
  if (m.dim() == 0) {
    out.kind = K::Found;
    out.iso = Mat<S>(0, 0);
    return out;
  }
  if (top<S>(m) != top<S>(n)) {
    out.kind = K::Absent;
    return out;
  }
  auto h = hom_space<S>(m, n);
  if (h.empty() || h.size() != hom_space<S>(m, m).size()) {
    out.kind = K::Absent;
    return out;
  }
  if (h.size() == 1) {
    out.kind = rank<S>(h[0]) == m.dim() ? K::Found : K::Absent;
    if (out.kind == K::Found) out.iso = h[0];
    return out;
  }
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    Mat<S> f = Mat<S>::Zero(n.dim(), m.dim());
    for (const auto& b : h) f += ScalarTraits<S>::random(m.field(), rng) * b;
    if (rank<S>(f) == m.dim()) {
      out.kind = K::Found;
      out.iso = f;
      return out;
    }
  }
  out.kind = K::Inconclusive;
  return out;
}

template <class S>
Stripped<S> strip_projectives(const Module<S>& m) {
  const auto& a = m.algebra();
  Stripped<S> out{m, std::vector<Index>(a->num_vertices(), 0)};
  std::vector<Module<S>> proj;
  std::vector<Mat<S>> lam;  // lambda_v on the basis of A e_v
  for (Index v = 0; v < a->num_vertices(); ++v) {
    proj.push_back(projective_module<S>(a, v));
    lam.push_back(mul<S>(Mat<S>(a->semisimple().row(v)), a->projective(v).basis));
  }
  bool again = true;
  while (again && out.core.dim() > 0) {
    again = false;
    for (Index v = 0; v < a->num_vertices() && !again; ++v) {
      const Mat<S>& ev = out.core.vertex_space(v);
      if (ev.cols() == 0) continue;
      for (const auto& g : hom_space<S>(out.core, proj[v])) {
        Mat<S> w = mul<S>(mul<S>(lam[v], g), ev);
        if (is_zero<S>(w)) continue;
        out.core = kernel<S>(out.core, g).module;
        ++out.removed[v];
        again = true;
        break;
      }
    }
  }
  return out;
}

template <class S>
Tri stable_iso(const Module<S>& m, const Module<S>& n, std::uint64_t seed, int trials) {
  auto sm = strip_projectives<S>(m), sn = strip_projectives<S>(n);
  if (sm.core.dim() != sn.core.dim()) return Tri::False;
  return find_iso<S>(sm.core, sn.core, seed, trials).as_tri();
}

template <class S>
bool is_indecomposable(const Module<S>& m) {
  if (m.dim() == 0) return false;
  auto e = hom_space<S>(m, m);
  const Index h = static_cast<Index>(e.size());
  const std::uint32_t ch = ScalarTraits<S>::characteristic(m.field());
  if (ch != 0 && ch <= static_cast<std::uint32_t>(h))
    throw RadicalNeedsLargerPrime("indecomposability test needs p > dim End = " + std::to_string(h));
  const Index d2 = m.dim() * m.dim();
  Mat<S> flat(d2, h);
  for (Index k = 0; k < h; ++k) flat.col(k) = Eigen::Map<const Vec<S>>(e[k].data(), d2);
  SpanCoords<S> sc(flat);
  // structure constants c[i][j] = coords of e_i e_j
  std::vector<std::vector<Vec<S>>> c(h, std::vector<Vec<S>>(h));
  for (Index i = 0; i < h; ++i)
    for (Index j = 0; j < h; ++j) {
      Mat<S> p = mul<S>(e[i], e[j]);
      c[i][j] = sc.coords(Vec<S>(Eigen::Map<const Vec<S>>(p.data(), d2)));
    }
  Vec<S> tr = Vec<S>::Zero(h);  // trace of left multiplication by e_k
  for (Index k = 0; k < h; ++k)
    for (Index j = 0; j < h; ++j) tr(k) += c[k][j](j);
  Mat<S> gram(h, h);
  for (Index i = 0; i < h; ++i)
    for (Index j = 0; j < h; ++j) gram(i, j) = c[i][j].dot(tr);
  return rank<S>(gram) == 1;
}

template <class S>
Index ext_dim(const Module<S>& m, const Module<S>& n, int i) {
  require_same<S>(m.algebra(), n.algebra(), "ext_dim");
  if (i < 0) return 0;
  const auto& a = m.algebra();
  // minimal resolution P_0 .. P_{i+1}
  std::vector<std::vector<Index>> verts;
  std::vector<Mat<S>> diff;  // diff[j] : P_j -> P_{j-1}, diff[0] unused
  Module<S> cur = m;
  Mat<S> to_prev;
  for (int j = 0; j <= i + 1; ++j) {
    auto c = projective_cover<S>(cur);
    verts.push_back(c.vertices);
    diff.push_back(j == 0 ? Mat<S>() : mul<S>(to_prev, c.epi));
    auto k = kernel<S>(c.projective, c.epi);
    cur = k.module;
    to_prev = k.inclusion;
  }
  // Hom(P_j, N) is the sum of e_v N over the summands of P_j
  auto hom_dim = [&](int j) {
    Index d = 0;
    for (Index v : verts[j]) d += n.vertex_space(v).cols();
    return d;
  };
  auto delta = [&](int j) {  // Hom(P_j, N) -> Hom(P_{j+1}, N)
    const auto& vs = verts[j];
    const auto& ws = verts[j + 1];
    Index rows = hom_dim(j + 1), cols = hom_dim(j);
    Mat<S> out = Mat<S>::Zero(rows, cols);
    auto off_next = summand_offsets<S>(a, ws);
    Index col = 0;
    for (std::size_t s = 0; s < vs.size(); ++s) {
      const Mat<S>& es = n.vertex_space(vs[s]);
      for (Index q = 0; q < es.cols(); ++q, ++col) {
        Mat<S> images = Mat<S>::Zero(n.dim(), static_cast<Index>(vs.size()));
        images.col(s) = es.col(q);
        Mat<S> phi = mul<S>(map_from_projective<S>(a, vs, images, n), diff[j + 1]);
        Index row = 0;
        for (std::size_t r = 0; r < ws.size(); ++r) {
          Vec<S> g = Vec<S>::Zero(off_next.back());
          g.segment(off_next[r], off_next[r + 1] - off_next[r]) = a->projective(ws[r]).generator;
          Mat<S> val = mul<S>(phi, Mat<S>(g));
          SpanCoords<S> sc(n.vertex_space(ws[r]));
          Index k = sc.dim();
          if (k > 0) out.block(row, col, k, 1) = sc.coords(val);
          row += k;
        }
      }
    }
    return out;
  };
  Index ker = hom_dim(i) - rank<S>(delta(i));
  Index img = i == 0 ? 0 : rank<S>(delta(i - 1));
  return ker - img;
}

#define SINGEQ_MODULE(S)                                                                               \
  template class Module<S>;                                                                            \
  template void validate_module<S>(const Module<S>&);                                                  \
  template Module<S> module_from_generators<S>(const AlgebraPtr<S>&, Index,                            \
                                               const std::vector<std::pair<Vec<S>, Mat<S>>>&);         \
  template Module<S> regular_module<S>(const AlgebraPtr<S>&);                                          \
  template Module<S> projective_module<S>(const AlgebraPtr<S>&, Index);                                \
  template Module<S> projective_sum<S>(const AlgebraPtr<S>&, const std::vector<Index>&);               \
  template std::vector<Index> summand_offsets<S>(const AlgebraPtr<S>&, const std::vector<Index>&);     \
  template Module<S> simple_module<S>(const AlgebraPtr<S>&, Index);                                    \
  template Module<S> zero_module<S>(const AlgebraPtr<S>&);                                             \
  template Module<S> direct_sum<S>(const std::vector<Module<S>>&);                                     \
  template Module<S> restrict_along<S>(const Module<S>&, const AlgebraHom<S>&);                        \
  template bool is_homomorphism<S>(const Module<S>&, const Module<S>&, const Mat<S>&);                 \
  template Module<S> submodule<S>(const Module<S>&, const Mat<S>&);                                    \
  template QuotientModule<S> quotient_module<S>(const Module<S>&, const Mat<S>&);                      \
  template KernelModule<S> kernel<S>(const Module<S>&, const Mat<S>&);                                 \
  template QuotientModule<S> cokernel<S>(const Module<S>&, const Mat<S>&);                             \
  template Mat<S> radical_of<S>(const Module<S>&);                                                     \
  template std::vector<Index> top<S>(const Module<S>&);                                                \
  template Mat<S> map_from_projective<S>(const AlgebraPtr<S>&, const std::vector<Index>&,              \
                                         const Mat<S>&, const Module<S>&);                             \
  template ProjectiveCover<S> projective_cover<S>(const Module<S>&);                                   \
  template Module<S> syzygy<S>(const Module<S>&, int);                                                 \
  template bool is_projective<S>(const Module<S>&);                                                    \
  template ProjDim projective_dimension<S>(const Module<S>&, int, std::uint64_t);                      \
  template std::vector<Mat<S>> hom_space<S>(const Module<S>&, const Module<S>&);                       \
  template IsoResult<S> find_iso<S>(const Module<S>&, const Module<S>&, std::uint64_t, int);           \
  template Stripped<S> strip_projectives<S>(const Module<S>&);                                         \
  template Tri stable_iso<S>(const Module<S>&, const Module<S>&, std::uint64_t, int);                  \
  template bool is_indecomposable<S>(const Module<S>&);                                                \
  template Index ext_dim<S>(const Module<S>&, const Module<S>&, int);

SINGEQ_FOR_EACH_SCALAR(SINGEQ_MODULE)

}  // namespace singeq
