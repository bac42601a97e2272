#include "singeq/complex.hpp"

#include <algorithm>

#include "instantiate.hpp"

namespace singeq {

namespace {

template <class S>
Mat<S> signed_by(const Mat<S>& m, int exponent) {
  return (exponent % 2 == 0) ? m : Mat<S>(-m);
}

// block matrix from a row-major grid; empty blocks are zero
template <class S>
Mat<S> assemble(const std::vector<Index>& rows, const std::vector<Index>& cols,
                const std::map<std::pair<std::size_t, std::size_t>, Mat<S>>& blocks) {
  std::vector<Index> ro(1, 0), co(1, 0);
  for (Index r : rows) ro.push_back(ro.back() + r);
  for (Index c : cols) co.push_back(co.back() + c);
  Mat<S> out = Mat<S>::Zero(ro.back(), co.back());
  for (const auto& [ij, b] : blocks) {
    if (b.rows() != rows[ij.first] || b.cols() != cols[ij.second]) throw ShapeMismatch("assemble: block shape");
    if (b.size()) out.block(ro[ij.first], co[ij.second], b.rows(), b.cols()) = b;
  }
  return out;
}

template <class S>
std::pair<AlgebraPtr<S>, AlgebraPtr<S>> derived_sides(const AlgebraPtr<S>& a) {
  if (!a) return {nullptr, nullptr};
  if (auto f = tensor_factors<S>(a)) return {f->first, opposite<S>(f->second)};
  return {a, nullptr};
}

}  // namespace

template <class S>
Complex<S>::Complex(AlgebraPtr<S> alg, int lo, std::vector<Module<S>> terms, std::vector<Mat<S>> diffs)
    : alg_(std::move(alg)), lo_(lo), terms_(std::move(terms)), diffs_(std::move(diffs)) {
  if (!alg_) throw InvalidComplex("complex without an algebra");
  if (diffs_.size() != terms_.size()) throw InvalidComplex("one differential per term expected");
  zero_ = zero_module<S>(alg_);
  std::tie(left_, right_) = derived_sides<S>(alg_);
  for (const auto& t : terms_) require_same<S>(t.algebra(), alg_, "complex term");
  if (!diffs_.empty()) diffs_[0] = zeros<S>(0, terms_[0].dim());
  for (std::size_t i = 1; i < terms_.size(); ++i) {
    const Mat<S>& d = diffs_[i];
    const int n = lo_ + static_cast<int>(i);
    if (d.rows() != terms_[i - 1].dim() || d.cols() != terms_[i].dim())
      throw InvalidComplex("d_" + std::to_string(n) + " has the wrong shape");
    if (!is_homomorphism<S>(terms_[i], terms_[i - 1], d))
      throw InvalidComplex("d_" + std::to_string(n) + " is not a homomorphism");
    if (i >= 2 && !is_zero<S>(mul<S>(diffs_[i - 1], d)))
      throw InvalidComplex("d_" + std::to_string(n - 1) + " d_" + std::to_string(n) + " != 0");
  }
}

template <class S>
const Module<S>& Complex<S>::term(int n) const {
  const int i = n - lo_;
  if (i < 0 || i >= static_cast<int>(terms_.size())) return zero_;
  return terms_[i];
}

template <class S>
Mat<S> Complex<S>::d(int n) const {
  const int i = n - lo_;
  if (i >= 1 && i < static_cast<int>(terms_.size())) return diffs_[i];
  return zeros<S>(term(n - 1).dim(), term(n).dim());
}

template <class S>
Complex<S> Complex<S>::as_left() const {
  Complex<S> out = *this;
  out.left_ = alg_;
  out.right_ = nullptr;
  return out;
}

template <class S>
Complex<S> Complex<S>::as_right() const {
  Complex<S> out = *this;
  out.left_ = nullptr;
  out.right_ = opposite<S>(alg_);
  return out;
}

template <class S>
Complex<S> Complex<S>::with_sides(AlgebraPtr<S> left, AlgebraPtr<S> right) const {
  if (sides_algebra<S>(alg_->field(), left, right) != alg_) throw TagMismatch("sides do not match the algebra");
  Complex<S> out = *this;
  out.left_ = std::move(left);
  out.right_ = std::move(right);
  return out;
}

template <class S>
Complex<S> Complex<S>::trimmed() const {
  int a = lo_, b = hi();
  while (a <= b && term(a).dim() == 0) ++a;
  while (b >= a && term(b).dim() == 0) --b;
  if (a > b) return zero_complex<S>(alg_).with_sides_of(*this);
  std::vector<Module<S>> t;
  std::vector<Mat<S>> d;
  for (int n = a; n <= b; ++n) {
    t.push_back(term(n));
    d.push_back(this->d(n));
  }
  return Complex<S>(alg_, a, t, d).with_sides_of(*this);
}

template <class S>
ChainMap<S>::ChainMap(Complex<S> source, Complex<S> target, std::map<int, Mat<S>> comps)
    : source_(std::move(source)), target_(std::move(target)), comps_(std::move(comps)) {
  require_same<S>(source_.algebra(), target_.algebra(), "chain map");
  int a = std::min(source_.lo(), target_.lo()), b = std::max(source_.hi(), target_.hi());
  for (const auto& [n, f] : comps_) {
    if (f.rows() != target_.term(n).dim() || f.cols() != source_.term(n).dim())
      throw InvalidComplex("chain map component " + std::to_string(n) + " has the wrong shape");
    if (!is_homomorphism<S>(source_.term(n), target_.term(n), f))
      throw InvalidComplex("chain map component " + std::to_string(n) + " is not a homomorphism");
  }
  for (int n = a; n <= b + 1; ++n)
    if (!equal<S>(mul<S>(target_.d(n), at(n)), mul<S>(at(n - 1), source_.d(n))))
      throw InvalidComplex("chain map does not commute with d_" + std::to_string(n));
}

template <class S>
Mat<S> ChainMap<S>::at(int n) const {
  auto it = comps_.find(n);
  if (it != comps_.end()) return it->second;
  return zeros<S>(target_.term(n).dim(), source_.term(n).dim());
}

template <class S>
Complex<S> zero_complex(const AlgebraPtr<S>& a) {
  return Complex<S>(a, 0, {}, {});
}

template <class S>
Complex<S> stalk(const Module<S>& m, int degree) {
  return Complex<S>(m.algebra(), degree, {m}, {Mat<S>()});
}

template <class S>
ChainMap<S> identity_map(const Complex<S>& c) {
  std::map<int, Mat<S>> comps;
  for (int n = c.lo(); n <= c.hi(); ++n) comps[n] = identity<S>(c.algebra()->field(), c.term(n).dim());
  return ChainMap<S>(c, c, comps);
}

template <class S>
ChainMap<S> zero_map(const Complex<S>& source, const Complex<S>& target) {
  return ChainMap<S>(source, target, {});
}

template <class S>
ChainMap<S> compose(const ChainMap<S>& g, const ChainMap<S>& f) {
  const auto& x = f.source();
  std::map<int, Mat<S>> comps;
  for (int n = x.lo(); n <= x.hi(); ++n) comps[n] = mul<S>(g.at(n), f.at(n));
  return ChainMap<S>(x, g.target(), comps);
}

template <class S>
ChainMap<S> stalk_map(const Module<S>& m, const Module<S>& n, const Mat<S>& f, int degree) {
  return ChainMap<S>(stalk<S>(m, degree), stalk<S>(n, degree), {{degree, f}});
}

template <class S>
Module<S> homology(const Complex<S>& c, int n) {
  auto k = kernel<S>(c.term(n), c.d(n));
  Mat<S> b = column_space<S>(c.d(n + 1));
  Mat<S> u = k.inclusion.cols() ? SpanCoords<S>(k.inclusion).coords(b) : zeros<S>(0, b.cols());
  return quotient_module<S>(k.module, u).module;
}

namespace {

template <class S>
Index homology_dim(const Complex<S>& c, int n) {
  return c.term(n).dim() - rank<S>(c.d(n)) - rank<S>(c.d(n + 1));
}

}  // namespace

template <class S>
bool is_exact(const Complex<S>& c) {
  for (int n = c.lo(); n <= c.hi(); ++n)
    if (homology_dim<S>(c, n) != 0) return false;
  return true;
}

template <class S>
long long euler_characteristic(const Complex<S>& c) {
  long long e = 0;
  for (int n = c.lo(); n <= c.hi(); ++n) e += (n % 2 == 0 ? 1 : -1) * static_cast<long long>(homology_dim<S>(c, n));
  return e;
}

template <class S>
Complex<S> shift(const Complex<S>& c, int n) {
  std::vector<Module<S>> t;
  std::vector<Mat<S>> d;
  for (int i = c.lo(); i <= c.hi(); ++i) {
    t.push_back(c.term(i));
    d.push_back(signed_by<S>(c.d(i), n));
  }
  return Complex<S>(c.algebra(), c.lo() + n, t, d).with_sides_of(c);
}

template <class S>
Cone<S> cone(const ChainMap<S>& f) {
  const auto& x = f.source();
  const auto& y = f.target();
  const auto& alg = x.algebra();
  Complex<S> sx = shift<S>(x, 1);
  int a, b;
  if (x.empty() && y.empty()) {
    a = 0;
    b = -1;
  } else if (x.empty()) {
    a = y.lo();
    b = y.hi();
  } else if (y.empty()) {
    a = x.lo() + 1;
    b = x.hi() + 1;
  } else {
    a = std::min(x.lo() + 1, y.lo());
    b = std::max(x.hi() + 1, y.hi());
  }
  std::vector<Module<S>> t;
  std::vector<Mat<S>> d;
  std::map<int, Mat<S>> inc, proj;
  for (int n = a; n <= b; ++n) {
    const Index xd = x.term(n - 1).dim(), yd = y.term(n).dim();
    const Index xd2 = x.term(n - 2).dim(), yd2 = y.term(n - 1).dim();
    t.push_back(direct_sum<S>(x.term(n - 1), y.term(n)));
    d.push_back(assemble<S>({xd2, yd2}, {xd, yd},
                            {{{0, 0}, Mat<S>(-x.d(n - 1))}, {{1, 0}, f.at(n - 1)}, {{1, 1}, y.d(n)}}));
    inc[n] = assemble<S>({xd, yd}, {yd}, {{{1, 0}, identity<S>(alg->field(), yd)}});
    proj[n] = assemble<S>({xd}, {xd, yd}, {{{0, 0}, identity<S>(alg->field(), xd)}});
  }
  Complex<S> c = Complex<S>(alg, a, t, d).with_sides_of(y);
  return {c, ChainMap<S>(y, c, inc), ChainMap<S>(c, sx, proj)};
}

template <class S>
bool is_quasi_iso(const ChainMap<S>& f) {
  return is_exact<S>(cone<S>(f).complex);
}

template <class S>
HardTruncation<S> hard_truncate_below(const Complex<S>& c, int m) {
  std::vector<Module<S>> qt, st;
  std::vector<Mat<S>> qd, sd;
  std::map<int, Mat<S>> proj;
  const int qlo = std::max(m, c.lo());
  for (int n = qlo; n <= c.hi(); ++n) {
    qt.push_back(c.term(n));
    qd.push_back(c.d(n));
    proj[n] = identity<S>(c.algebra()->field(), c.term(n).dim());
  }
  for (int n = c.lo(); n <= std::min(m - 1, c.hi()); ++n) {
    st.push_back(c.term(n));
    sd.push_back(c.d(n));
  }
  Complex<S> q = Complex<S>(c.algebra(), qt.empty() ? 0 : qlo, qt, qd).with_sides_of(c);
  Complex<S> s = Complex<S>(c.algebra(), st.empty() ? 0 : c.lo(), st, sd).with_sides_of(c);
  return {q, ChainMap<S>(c, q, proj), s};
}

template <class S>
TensorComplex<S> tensor_complexes(const Complex<S>& x, const Complex<S>& y) {
  if (!x.right() || !y.left()) throw TagMismatch("tensor_complexes: missing the middle action");
  require_same<S>(x.right(), y.left(), "tensor_complexes");
  const FieldSpec& f = x.algebra()->field();
  auto out_alg = sides_algebra<S>(f, x.left(), y.right());
  TensorComplex<S> tc;
  if (x.empty() || y.empty()) {
    tc.complex = zero_complex<S>(out_alg).with_sides(x.left(), y.right());
    return tc;
  }
  for (int p = x.lo(); p <= x.hi(); ++p)
    for (int q = y.lo(); q <= y.hi(); ++q) tc.blocks.emplace(std::make_pair(p, q), tensor_over<S>(x.bimod(p), y.bimod(q)));

  const int a = x.lo() + y.lo(), b = x.hi() + y.hi();
  auto pairs = [&](int n) {
    std::vector<std::pair<int, int>> v;
    for (int p = x.lo(); p <= x.hi(); ++p)
      if (n - p >= y.lo() && n - p <= y.hi()) v.emplace_back(p, n - p);
    return v;
  };
  auto dims = [&](const std::vector<std::pair<int, int>>& v) {
    std::vector<Index> out;
    for (const auto& pq : v) out.push_back(tc.blocks.at(pq).result.module.dim());
    return out;
  };

  std::vector<Module<S>> terms;
  std::vector<Mat<S>> diffs;
  for (int n = a; n <= b; ++n) {
    auto here = pairs(n), below = pairs(n - 1);
    std::vector<Module<S>> parts;
    Index off = 0;
    for (const auto& pq : here) {
      parts.push_back(tc.blocks.at(pq).result.module);
      tc.offsets[pq] = off;
      off += parts.back().dim();
    }
    terms.push_back(direct_sum<S>(parts));
    std::map<std::pair<std::size_t, std::size_t>, Mat<S>> blocks;
    for (std::size_t j = 0; j < here.size(); ++j) {
      const auto [p, q] = here[j];
      const auto& from = tc.blocks.at(here[j]);
      for (std::size_t i = 0; i < below.size(); ++i) {
        const auto& to = tc.blocks.at(below[i]);
        if (below[i] == std::make_pair(p - 1, q)) {
          blocks[{i, j}] = tensor_maps<S>(from, to, x.d(p), identity<S>(f, y.term(q).dim()));
        } else if (below[i] == std::make_pair(p, q - 1)) {
          blocks[{i, j}] = signed_by<S>(tensor_maps<S>(from, to, identity<S>(f, x.term(p).dim()), y.d(q)), p);
        }
      }
    }
    diffs.push_back(n == a ? Mat<S>() : assemble<S>(dims(below), dims(here), blocks));
  }
  tc.complex = Complex<S>(out_alg, a, terms, diffs).with_sides(x.left(), y.right());
  return tc;
}

template <class S>
HomComplex<S> hom_complex_regular(const Complex<S>& p) {
  if (!p.left()) throw TagMismatch("hom_complex_regular: no left action");
  const FieldSpec& f = p.algebra()->field();
  auto out_alg = sides_algebra<S>(f, p.right(), p.left());
  HomComplex<S> hc;
  if (p.empty()) {
    hc.complex = zero_complex<S>(out_alg).with_sides(p.right(), p.left());
    return hc;
  }
  for (int q = p.lo(); q <= p.hi(); ++q) hc.homs.emplace(q, hom_into_regular<S>(p.bimod(q)));
  std::vector<Module<S>> terms;
  std::vector<Mat<S>> diffs;
  for (int q = p.hi(); q >= p.lo(); --q) {
    const auto& h = hc.homs.at(q);
    terms.push_back(h.result.module);
    if (q == p.hi()) {
      diffs.emplace_back();
      continue;
    }
    // degree -q to degree -q-1: f -> (-1)^q f d_{q+1}
    const auto& up = hc.homs.at(q + 1);
    const Mat<S> dq = p.d(q + 1);
    Mat<S> m(up.result.module.dim(), h.result.module.dim());
    for (std::size_t k = 0; k < h.basis.size(); ++k) m.col(k) = up.coordinates(mul<S>(h.basis[k], dq));
    diffs.push_back(signed_by<S>(m, q));
  }
  hc.complex = Complex<S>(out_alg, -p.hi(), terms, diffs).with_sides(p.right(), p.left());
  return hc;
}

template <class S>
EndComplex<S> end_complex(const Complex<S>& p) {
  if (!p.left()) throw TagMismatch("end_complex: no left action");
  const FieldSpec& f = p.algebra()->field();
  auto out_alg = sides_algebra<S>(f, p.right(), p.right());
  EndComplex<S> ec;
  if (p.empty()) {
    ec.complex = zero_complex<S>(out_alg).with_sides(p.right(), p.right());
    return ec;
  }
  for (int a = p.lo(); a <= p.hi(); ++a)
    for (int b = p.lo(); b <= p.hi(); ++b) ec.homs.emplace(std::make_pair(a, b), hom_bimodule<S>(p.bimod(a), p.bimod(b)));
  const int span = p.hi() - p.lo();
  auto pairs = [&](int n) {
    std::vector<std::pair<int, int>> v;
    for (int a = p.lo(); a <= p.hi(); ++a)
      if (a + n >= p.lo() && a + n <= p.hi()) v.emplace_back(a, a + n);
    return v;
  };
  auto dims = [&](const std::vector<std::pair<int, int>>& v) {
    std::vector<Index> out;
    for (const auto& ab : v) out.push_back(ec.homs.at(ab).result.module.dim());
    return out;
  };
  std::vector<Module<S>> terms;
  std::vector<Mat<S>> diffs;
  for (int n = -span; n <= span; ++n) {
    auto here = pairs(n), below = pairs(n - 1);
    std::vector<Module<S>> parts;
    Index off = 0;
    for (const auto& ab : here) {
      parts.push_back(ec.homs.at(ab).result.module);
      ec.offsets[ab] = off;
      off += parts.back().dim();
    }
    terms.push_back(direct_sum<S>(parts));
    std::map<std::pair<std::size_t, std::size_t>, Mat<S>> blocks;
    for (std::size_t j = 0; j < here.size(); ++j) {
      const auto [a, b] = here[j];
      const auto& h = ec.homs.at(here[j]);
      for (std::size_t i = 0; i < below.size(); ++i) {
        const auto& to = ec.homs.at(below[i]);
        Mat<S> m(to.result.module.dim(), h.result.module.dim());
        if (below[i] == std::make_pair(a, b - 1)) {
          const Mat<S> db = p.d(b);
          for (std::size_t k = 0; k < h.basis.size(); ++k) m.col(k) = to.coordinates(mul<S>(db, h.basis[k]));
        } else if (below[i] == std::make_pair(a + 1, b)) {
          const Mat<S> da = p.d(a + 1);
          for (std::size_t k = 0; k < h.basis.size(); ++k) m.col(k) = to.coordinates(mul<S>(h.basis[k], da));
          m = signed_by<S>(m, n + 1);
        } else {
          continue;
        }
        blocks[{i, j}] = m;
      }
    }
    diffs.push_back(n == -span ? Mat<S>() : assemble<S>(dims(below), dims(here), blocks));
  }
  ec.complex = Complex<S>(out_alg, -span, terms, diffs).with_sides(p.right(), p.right());
  return ec;
}

template <class S>
Resolution<S>::Resolution(Complex<S> c) : st_(std::make_shared<State>()) {
  st_->c = std::move(c);
  st_->zero = zero_module<S>(st_->c.algebra());
}

template <class S>
int Resolution<S>::realized() const {
  std::lock_guard<std::mutex> lock(st_->mu);
  return st_->c.lo() + static_cast<int>(st_->terms.size()) - 1;
}

// Degree n: with V = P_{n-1} + c_n and K the kernel of
// (x, y) -> (d x, rho x - d y), P_n covers K modulo (0, d c_{n+1}).
template <class S>
void Resolution<S>::extend(int n) const {
  std::lock_guard<std::mutex> lock(st_->mu);
  State& s = *st_;
  const auto& c = s.c;
  const auto& alg = c.algebra();
  for (int m = c.lo() + static_cast<int>(s.terms.size()); m <= n; ++m) {
    const int i = m - c.lo();
    const Module<S> prev = i ? s.terms[i - 1] : zero_module<S>(alg);
    const Index pp = (i >= 2) ? s.terms[i - 2].dim() : 0;
    const Mat<S> dprev = i ? s.d[i - 1] : zeros<S>(0, 0);
    const Mat<S> rprev = i ? s.rho[i - 1] : zeros<S>(c.term(m - 1).dim(), 0);
    const Module<S>& cm = c.term(m);
    const Index a = prev.dim(), b = cm.dim(), cb = c.term(m - 1).dim();

    Module<S> v = direct_sum<S>(prev, cm);
    Mat<S> phi = assemble<S>({pp, cb}, {a, b},
                             {{{0, 0}, i >= 2 ? dprev : zeros<S>(pp, a)}, {{1, 0}, rprev}, {{1, 1}, Mat<S>(-c.d(m))}});
    auto k = kernel<S>(v, phi);
    const Mat<S> dc = c.d(m + 1);
    Mat<S> u = assemble<S>({a, b}, {dc.cols()}, {{{1, 0}, dc}});
    Mat<S> uk = k.inclusion.cols() ? SpanCoords<S>(k.inclusion).coords(u) : zeros<S>(0, u.cols());
    auto q = quotient_module<S>(k.module, column_space<S>(uk));
    auto cover = projective_cover<S>(q.module);
    Mat<S> gens(v.dim(), static_cast<Index>(cover.vertices.size()));
    for (std::size_t g = 0; g < cover.vertices.size(); ++g) {
      Mat<S> lift = mul<S>(q.section, Mat<S>(cover.generators.col(g)));
      lift = mul<S>(k.module.idempotent_action(cover.vertices[g]), lift);
      gens.col(g) = mul<S>(k.inclusion, lift).col(0);
    }
    Mat<S> pi = map_from_projective<S>(alg, cover.vertices, gens, v);
    s.terms.push_back(cover.projective);
    s.verts.push_back(cover.vertices);
    s.d.push_back(i ? Mat<S>(pi.topRows(a)) : zeros<S>(0, cover.projective.dim()));
    s.rho.push_back(pi.bottomRows(b));
  }
}

template <class S>
const Module<S>& Resolution<S>::term(int n) const {
  if (n < st_->c.lo()) return st_->zero;
  extend(n);
  std::lock_guard<std::mutex> lock(st_->mu);
  return st_->terms[n - st_->c.lo()];
}

template <class S>
const std::vector<Index>& Resolution<S>::vertices(int n) const {
  static const std::vector<Index> none;
  if (n < st_->c.lo()) return none;
  extend(n);
  std::lock_guard<std::mutex> lock(st_->mu);
  return st_->verts[n - st_->c.lo()];
}

template <class S>
Mat<S> Resolution<S>::d(int n) const {
  if (n <= st_->c.lo()) return zeros<S>(term(n - 1).dim(), term(n).dim());
  extend(n);
  std::lock_guard<std::mutex> lock(st_->mu);
  return st_->d[n - st_->c.lo()];
}

template <class S>
Mat<S> Resolution<S>::rho(int n) const {
  if (n < st_->c.lo()) return zeros<S>(st_->c.term(n).dim(), 0);
  extend(n);
  std::lock_guard<std::mutex> lock(st_->mu);
  return st_->rho[n - st_->c.lo()];
}

template <class S>
Complex<S> Resolution<S>::complex(int through) const {
  const auto& c = st_->c;
  std::vector<Module<S>> t;
  std::vector<Mat<S>> d;
  for (int n = c.lo(); n <= through; ++n) {
    t.push_back(term(n));
    d.push_back(this->d(n));
  }
  return Complex<S>(c.algebra(), c.lo(), t, d).with_sides_of(c);
}

template <class S>
ChainMap<S> Resolution<S>::map(int through) const {
  std::map<int, Mat<S>> comps;
  for (int n = st_->c.lo(); n <= through; ++n) comps[n] = rho(n);
  return ChainMap<S>(complex(through), st_->c, comps);
}

template <class S>
QuotientModule<S> Resolution<S>::tail(int n) const {
  if (n < st_->c.hi()) throw InvalidComplex("tail below the top of the complex");
  return quotient_module<S>(term(n), column_space<S>(d(n + 1)));
}

template <class S>
Resolved<S> resolve_complex(const Complex<S>& c, int through) {
  Resolution<S> r(c);
  return {r.complex(through), r.map(through)};
}

template <class S>
Module<S> tail_syzygy(const Complex<S>& c, int n) {
  return Resolution<S>(c).tail(n).module;
}

template <class S>
Truncation<S> truncate_resolution(const Resolution<S>& r, int s) {
  const auto& c = r.target();
  if (c.empty()) return {c, identity_map<S>(c), s};
  if (s < std::max(c.lo(), c.hi())) throw InvalidComplex("truncation below the top of the complex");
  auto tl = r.tail(s);
  std::vector<Module<S>> t;
  std::vector<Mat<S>> d;
  std::map<int, Mat<S>> comps;
  for (int n = c.lo(); n < s; ++n) {
    t.push_back(r.term(n));
    d.push_back(r.d(n));
    comps[n] = r.rho(n);
  }
  t.push_back(tl.module);
  d.push_back(s == c.lo() ? Mat<S>() : mul<S>(r.d(s), tl.section));
  comps[s] = mul<S>(r.rho(s), tl.section);
  Complex<S> l = Complex<S>(c.algebra(), c.lo(), t, d).with_sides_of(c);
  return {l, ChainMap<S>(l, c, comps), s};
}

template <class S>
Perfection is_perfect(const Resolution<S>& r, int cutoff, std::uint64_t seed) {
  const auto& c = r.target();
  Perfection out;
  out.cutoff = cutoff;
  if (c.empty()) {
    out.zero = true;
    return out;
  }
  const int h = std::max(c.lo(), c.hi());
  auto tl = r.tail(h);
  ProjDim pd = projective_dimension<S>(tl.module, cutoff, seed);
  if (!pd.finite()) {
    out.kind = Perfection::Kind::NotPerfectWithinCutoff;
    if (pd.periodic) out.periodic = Periodicity{h + pd.periodic->first, h + pd.periodic->second};
    return out;
  }
  if (pd.kind == ProjDim::Kind::Finite) {
    out.bound = h + pd.value;
    return out;
  }
  for (int n = h - 1; n >= c.lo(); --n)
    if (r.term(n).dim()) {
      out.bound = n;
      return out;
    }
  out.zero = true;
  return out;
}

template <class S>
Perfection is_perfect(const Complex<S>& c, int cutoff, std::uint64_t seed) {
  return is_perfect<S>(Resolution<S>(c), cutoff, seed);
}

template <class S>
Complex<S> restrict_complex(const Complex<S>& c, Side side) {
  AlgebraPtr<S> alg = side == Side::Left ? c.left() : (c.right() ? opposite<S>(c.right()) : nullptr);
  if (!alg) throw TagMismatch("restrict_complex: side not present");
  std::vector<Module<S>> t;
  std::vector<Mat<S>> d;
  for (int n = c.lo(); n <= c.hi(); ++n) {
    t.push_back(restrict_side<S>(c.bimod(n), side));
    d.push_back(c.d(n));
  }
  Complex<S> out(alg, c.empty() ? 0 : c.lo(), t, d);
  return side == Side::Left ? out.as_left() : out.as_right();
}

template <class S>
bool is_minimal(const Complex<S>& c) {
  for (int n = c.lo() + 1; n <= c.hi(); ++n) {
    Mat<S> rad = radical_of<S>(c.term(n - 1));
    Mat<S> both(rad.rows(), rad.cols() + c.d(n).cols());
    both << rad, c.d(n);
    if (rank<S>(both) != rank<S>(rad)) return false;
  }
  return true;
}

#define SINGEQ_COMPLEX(S)                                                                                  \
  template class Complex<S>;                                                                               \
  template class ChainMap<S>;                                                                              \
  template class Resolution<S>;                                                                            \
  template Complex<S> zero_complex<S>(const AlgebraPtr<S>&);                                               \
  template Complex<S> stalk<S>(const Module<S>&, int);                                                     \
  template ChainMap<S> identity_map<S>(const Complex<S>&);                                                 \
  template ChainMap<S> zero_map<S>(const Complex<S>&, const Complex<S>&);                                  \
  template ChainMap<S> compose<S>(const ChainMap<S>&, const ChainMap<S>&);                                 \
  template ChainMap<S> stalk_map<S>(const Module<S>&, const Module<S>&, const Mat<S>&, int);               \
  template Module<S> homology<S>(const Complex<S>&, int);                                                  \
  template bool is_exact<S>(const Complex<S>&);                                                            \
  template long long euler_characteristic<S>(const Complex<S>&);                                           \
  template Complex<S> shift<S>(const Complex<S>&, int);                                                    \
  template Cone<S> cone<S>(const ChainMap<S>&);                                                            \
  template bool is_quasi_iso<S>(const ChainMap<S>&);                                                       \
  template HardTruncation<S> hard_truncate_below<S>(const Complex<S>&, int);                               \
  template TensorComplex<S> tensor_complexes<S>(const Complex<S>&, const Complex<S>&);                     \
  template HomComplex<S> hom_complex_regular<S>(const Complex<S>&);                                        \
  template EndComplex<S> end_complex<S>(const Complex<S>&);                                                \
  template Resolved<S> resolve_complex<S>(const Complex<S>&, int);                                         \
  template Module<S> tail_syzygy<S>(const Complex<S>&, int);                                               \
  template Truncation<S> truncate_resolution<S>(const Resolution<S>&, int);                                \
  template Perfection is_perfect<S>(const Resolution<S>&, int, std::uint64_t);                             \
  template Perfection is_perfect<S>(const Complex<S>&, int, std::uint64_t);                                \
  template Complex<S> restrict_complex<S>(const Complex<S>&, Side);                                        \
  template bool is_minimal<S>(const Complex<S>&);

SINGEQ_FOR_EACH_SCALAR(SINGEQ_COMPLEX)

}  // namespace singeq
