#include "singeq/algebra.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "instantiate.hpp"

namespace singeq {

namespace {

std::uint64_t fnv(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  h ^= 0xff;
  h *= 1099511628211ull;
  return h;
}

template <class S>
S one(const FieldSpec& f) {
  return ScalarTraits<S>::from_int(f, 1);
}

template <class S>
Vec<S> unit_vec(const FieldSpec& f, Index n, Index i) {
  Vec<S> v = Vec<S>::Zero(n);
  v(i) = one<S>(f);
  return v;
}

}  // namespace

template <class S>
Vec<S> Algebra<S>::basis_vector(Index i) const {
  return unit_vec<S>(field(), dim(), i);
}

template <class S>
Vec<S> Algebra<S>::scalar(long long c) const {
  Vec<S> v = unit();
  return v * ScalarTraits<S>::from_int(field(), c);
}

template <class S>
Mat<S> Algebra<S>::left_matrix(const Vec<S>& x) const {
  Mat<S> m = Mat<S>::Zero(dim(), dim());
  for (Index i = 0; i < dim(); ++i)
    if (!is_zero(x(i))) m += x(i) * d_.left[i];
  return m;
}

template <class S>
Mat<S> Algebra<S>::right_matrix(const Vec<S>& y) const {
  Mat<S> m(dim(), dim());
  Mat<S> ym = y;
  for (Index j = 0; j < dim(); ++j) m.col(j) = mul<S>(d_.left[j], ym).col(0);
  return m;
}

template <class S>
Vec<S> Algebra<S>::product(const Vec<S>& x, const Vec<S>& y) const {
  Mat<S> ym = y;
  return mul<S>(left_matrix(x), ym).col(0);
}

template <class S>
Index Algebra<S>::find_label(const std::string& label) const {
  for (Index i = 0; i < dim(); ++i)
    if (d_.labels[i] == label) return i;
  return -1;
}

template <class S>
Index Algebra<S>::find_vertex(const std::string& label) const {
  for (Index v = 0; v < num_vertices(); ++v)
    if (d_.vertex_labels[v] == label) return v;
  return -1;
}

template <class S>
AlgebraPtr<S> Algebra<S>::make(Data d, bool validate) {
  auto* raw = new Algebra<S>(std::move(d));
  std::shared_ptr<Algebra<S>> a(raw);
  a->derive(validate);
  return a;
}

template <class S>
void Algebra<S>::derive(bool validate) {
  const FieldSpec& f = d_.field;
  const Index n = dim();
  for (auto& m : d_.left) {
    if (m.rows() != n || m.cols() != n) throw ShapeMismatch("structure matrix has wrong shape");
    bind<S>(m, f);
  }
  if (d_.unit.size() != n) throw ShapeMismatch("unit has wrong length");
  if (d_.labels.empty())
    for (Index i = 0; i < n; ++i) d_.labels.push_back("b" + std::to_string(i + 1));
  if (static_cast<Index>(d_.labels.size()) != n) throw ShapeMismatch("wrong number of basis labels");
  {
    Mat<S> u = d_.unit;
    bind<S>(u, f);
    d_.unit = u.col(0);
  }

  if (validate) {
    Mat<S> id = identity<S>(f, n);
    if (!equal<S>(left_matrix(d_.unit), id)) throw ValidationError("unit does not act as identity on the left");
    for (Index i = 0; i < n; ++i) {
      Mat<S> u = d_.unit;
      if (!equal<S>(mul<S>(d_.left[i], u), Mat<S>(basis_vector(i))))
        throw ValidationError("unit does not act as identity on the right of " + d_.labels[i]);
    }
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) {
        Mat<S> lhs = mul<S>(d_.left[i], d_.left[j]);
        Vec<S> bij = d_.left[i].col(j);
        if (!equal<S>(lhs, left_matrix(bij)))
          throw ValidationError("multiplication is not associative at (" + d_.labels[i] + ", " +
                                d_.labels[j] + ")");
      }
  }

  if (!d_.radical) {
    const std::uint32_t ch = ScalarTraits<S>::characteristic(f);
    if (ch != 0 && ch <= static_cast<std::uint32_t>(n))
      throw RadicalNeedsLargerPrime("radical via the trace form needs p > " + std::to_string(n));
    Mat<S> gram(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) {
        Mat<S> prod = mul<S>(d_.left[i], d_.left[j]);
        S t = S(0);
        for (Index k = 0; k < n; ++k) t += prod(k, k);
        gram(i, j) = t;
      }
    d_.radical = kernel_basis<S>(gram);
  }
  bind<S>(*d_.radical, f);
  const Index r = d_.radical->cols();

  if (d_.idempotents.empty()) {
    if (n - r != 1)
      throw NotElementary("primitive idempotents must be given when A/rad has dimension " +
                          std::to_string(n - r));
    d_.idempotents.push_back(d_.unit);
  }
  for (auto& e : d_.idempotents) {
    if (e.size() != n) throw ShapeMismatch("idempotent has wrong length");
    Mat<S> em = e;
    bind<S>(em, f);
    e = em.col(0);
  }
  const Index nv = num_vertices();
  if (d_.vertex_labels.empty())
    for (Index v = 0; v < nv; ++v) d_.vertex_labels.push_back(std::to_string(v + 1));
  if (static_cast<Index>(d_.vertex_labels.size()) != nv) throw ShapeMismatch("wrong number of vertex labels");

  if (validate) {
    Vec<S> sum = Vec<S>::Zero(n);
    for (Index v = 0; v < nv; ++v) {
      sum += d_.idempotents[v];
      for (Index w = 0; w < nv; ++w) {
        Vec<S> p = product(d_.idempotents[v], d_.idempotents[w]);
        Vec<S> expect = v == w ? d_.idempotents[v] : Vec<S>(Vec<S>::Zero(n));
        if (!equal<S>(Mat<S>(p), Mat<S>(expect)))
          throw NotIdempotent("idempotents " + d_.vertex_labels[v] + ", " + d_.vertex_labels[w] +
                              " are not orthogonal idempotents");
      }
    }
    if (!equal<S>(Mat<S>(sum), Mat<S>(d_.unit))) throw NotIdempotent("idempotents do not sum to 1");
  }

  if (nv + r != n)
    throw NotElementary("dim A/rad = " + std::to_string(n - r) + " but there are " +
                        std::to_string(nv) + " primitive idempotents");
  {
    Mat<S> er(n, n);
    for (Index v = 0; v < nv; ++v) er.col(v) = d_.idempotents[v];
    er.rightCols(r) = *d_.radical;
    auto inv = inverse<S>(er);
    if (!inv) throw NotElementary("idempotents and radical do not span the algebra");
    semisimple_ = inv->topRows(nv);
  }

  // arrows: e_w (rad / rad^2) e_v
  const Mat<S>& rad = *d_.radical;
  std::vector<Mat<S>> rad2_parts;
  for (Index i = 0; i < r; ++i) rad2_parts.push_back(mul<S>(left_matrix(rad.col(i)), rad));
  Mat<S> rad2 = column_space<S>(hcat<S>(rad2_parts, n));
  std::vector<Mat<S>> lmat, rmat;
  for (Index v = 0; v < nv; ++v) {
    lmat.push_back(left_matrix(d_.idempotents[v]));
    rmat.push_back(right_matrix(d_.idempotents[v]));
  }
  arrows_.clear();
  for (Index w = 0; w < nv; ++w)
    for (Index v = 0; v < nv; ++v) {
      Mat<S> sand = mul<S>(lmat[w], rmat[v]);
      Mat<S> big = column_space<S>(mul<S>(sand, rad));
      if (big.cols() == 0) continue;
      Mat<S> small = column_space<S>(mul<S>(sand, rad2));
      Mat<S> both = hcat<S>({small, big}, n);
      for (Index c : independent_columns<S>(both))
        if (c >= small.cols()) arrows_.push_back({v, w, both.col(c)});
    }

  projectives_.clear();
  for (Index v = 0; v < nv; ++v) {
    ProjectiveData<S> p;
    p.vertex = v;
    p.from_basis = independent_columns<S>(rmat[v]);
    p.basis = Mat<S>(n, static_cast<Index>(p.from_basis.size()));
    for (std::size_t j = 0; j < p.from_basis.size(); ++j) p.basis.col(j) = rmat[v].col(p.from_basis[j]);
    p.coords = SpanCoords<S>(p.basis);
    p.generator = p.coords.coords(d_.idempotents[v]);
    projectives_.push_back(std::move(p));
  }

  std::uint64_t h = 1469598103934665603ull;
  h = fnv(h, f.describe());
  h = fnv(h, std::to_string(n) + "/" + std::to_string(nv));
  for (const auto& m : d_.left)
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i)
        if (!is_zero(m(i, j))) h = fnv(h, std::to_string(i) + "," + std::to_string(j) + ":" + ScalarTraits<S>::str(m(i, j)));
  for (const auto& e : d_.idempotents)
    for (Index i = 0; i < n; ++i) h = fnv(h, ScalarTraits<S>::str(e(i)));
  fingerprint_ = h;
}

template <class S>
bool same_algebra(const AlgebraPtr<S>& a, const AlgebraPtr<S>& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->fingerprint() != b->fingerprint() || a->dim() != b->dim() ||
      a->num_vertices() != b->num_vertices() || !(a->field() == b->field()))
    return false;
  for (Index i = 0; i < a->dim(); ++i)
    if (!equal<S>(a->left(i), b->left(i))) return false;
  for (Index v = 0; v < a->num_vertices(); ++v)
    if (!equal<S>(Mat<S>(a->idempotent(v)), Mat<S>(b->idempotent(v)))) return false;
  return true;
}

template <class S>
void require_same(const AlgebraPtr<S>& a, const AlgebraPtr<S>& b, const char* where) {
  if (!same_algebra(a, b)) throw AlgebraMismatch(std::string(where) + ": modules live over different algebras");
}

namespace {

struct PathInfo {
  std::vector<int> arrows;  // product order
  int source = 0;
  int target = 0;
  int vertex = -1;  // for trivial paths
};

}  // namespace

template <class S>
AlgebraPtr<S> algebra_from_quiver(const FieldSpec& f, const QuiverPresentation& q, int nilpotency_bound) {
  check_field<S>(f);
  const int nv = static_cast<int>(q.vertices.size());
  if (nv == 0) throw ValidationError("quiver has no vertices");
  std::map<std::string, int> vid, aid;
  for (int v = 0; v < nv; ++v)
    if (!vid.emplace(q.vertices[v], v).second) throw ValidationError("duplicate vertex " + q.vertices[v]);
  std::vector<int> asrc, atgt;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    const auto& arr = q.arrows[a];
    if (!aid.emplace(arr.label, static_cast<int>(a)).second) throw ValidationError("duplicate arrow " + arr.label);
    auto s = vid.find(arr.source), t = vid.find(arr.target);
    if (s == vid.end() || t == vid.end()) throw ValidationError("arrow " + arr.label + " has an unknown endpoint");
    asrc.push_back(s->second);
    atgt.push_back(t->second);
  }

  struct Term {
    S coeff;
    std::vector<int> arrows;
  };
  struct Rel {
    std::vector<Term> terms;
    int source, target;
    std::size_t min_len;
  };
  std::vector<Rel> rels;
  for (const auto& rel : q.relations) {
    Rel out{{}, -1, -1, ~std::size_t{0}};
    if (rel.terms.empty()) throw ValidationError("empty relation");
    for (const auto& t : rel.terms) {
      if (t.path.size() < 2) throw ValidationError("relation term of length < 2 is not admissible");
      std::vector<int> arrows;
      for (const auto& l : t.path) {
        auto it = aid.find(l);
        if (it == aid.end()) throw ValidationError("unknown arrow " + l + " in relation");
        arrows.push_back(it->second);
      }
      for (std::size_t i = 0; i + 1 < arrows.size(); ++i)
        if (asrc[arrows[i]] != atgt[arrows[i + 1]])
          throw InconsistentRelations("path in relation is not composable");
      int s = asrc[arrows.back()], tg = atgt[arrows.front()];
      if (out.source < 0) {
        out.source = s;
        out.target = tg;
      } else if (out.source != s || out.target != tg) {
        throw InconsistentRelations("relation terms are not parallel");
      }
      if (t.den == 0) throw ValidationError("zero denominator in relation");
      S c = ScalarTraits<S>::from_int(f, t.num) / ScalarTraits<S>::from_int(f, t.den);
      out.terms.push_back({c, arrows});
      out.min_len = std::min(out.min_len, arrows.size());
    }
    rels.push_back(std::move(out));
  }

  // paths by length
  std::vector<std::vector<PathInfo>> levels(1);
  for (int v = 0; v < nv; ++v) levels[0].push_back({{}, v, v, v});
  const std::size_t path_cap = 200000;

  for (int L = 1;; ++L) {
    if (L > nilpotency_bound)
      throw NotNilpotent("arrow ideal is not nilpotent modulo the relations within length " +
                         std::to_string(nilpotency_bound));
    std::vector<PathInfo> next;
    for (const auto& p : levels.back())
      for (std::size_t a = 0; a < q.arrows.size(); ++a)
        if (asrc[a] == p.target) {
          PathInfo np;
          np.arrows.push_back(static_cast<int>(a));
          np.arrows.insert(np.arrows.end(), p.arrows.begin(), p.arrows.end());
          np.source = p.source;
          np.target = atgt[a];
          next.push_back(std::move(np));
        }
    std::sort(next.begin(), next.end(), [](const PathInfo& x, const PathInfo& y) { return x.arrows < y.arrows; });
    levels.push_back(std::move(next));
    std::size_t total = 0;
    for (const auto& l : levels) total += l.size();
    if (total > path_cap) throw NotNilpotent("path space grows past " + std::to_string(path_cap) + " paths");

    // columns: longest paths first, reverse lexicographic within a length
    std::map<std::vector<int>, Index> col;
    std::vector<const PathInfo*> cols;
    for (int len = L; len >= 1; --len)
      for (auto it = levels[len].rbegin(); it != levels[len].rend(); ++it) {
        col[it->arrows] = static_cast<Index>(cols.size());
        cols.push_back(&*it);
      }
    const Index ncols = static_cast<Index>(cols.size());

    std::vector<Vec<S>> rows;
    for (const auto& rel : rels) {
      const int room = L - static_cast<int>(rel.min_len);
      if (room < 0) continue;
      for (int lp = 0; lp <= room; ++lp)
        for (const auto& p : levels[lp]) {
          if (p.source != rel.target) continue;
          for (int lq = 0; lq + lp <= room; ++lq)
            for (const auto& qq : levels[lq]) {
              if (qq.target != rel.source) continue;
              Vec<S> row = Vec<S>::Zero(ncols);
              bool any = false;
              for (const auto& t : rel.terms) {
                if (static_cast<int>(lp + t.arrows.size() + lq) > L) continue;
                std::vector<int> w = p.arrows;
                w.insert(w.end(), t.arrows.begin(), t.arrows.end());
                w.insert(w.end(), qq.arrows.begin(), qq.arrows.end());
                row(col.at(w)) += t.coeff;
                any = true;
              }
              if (any) rows.push_back(std::move(row));
            }
        }
    }
    Mat<S> rm(static_cast<Index>(rows.size()), ncols);
    for (std::size_t i = 0; i < rows.size(); ++i) rm.row(i) = rows[i].transpose();
    auto ech = echelon<S>(rm);
    std::vector<Index> pivot_row(ncols, -1);
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) pivot_row[ech.pivots[r]] = static_cast<Index>(r);

    bool done = true;
    for (const auto& p : levels[L]) {
      Index c = col.at(p.arrows);
      if (pivot_row[c] < 0) {
        done = false;
        break;
      }
      for (Index j = 0; j < ncols; ++j)
        if (pivot_row[j] < 0 && !is_zero(ech.reduced(pivot_row[c], j))) {
          done = false;
          break;
        }
      if (!done) break;
    }
    if (!done) continue;

    // basis: vertices, then standard paths by length and lexicographic order
    std::vector<const PathInfo*> basis;
    for (const auto& p : levels[0]) basis.push_back(&p);
    for (int len = 1; len <= L; ++len)
      for (const auto& p : levels[len])
        if (pivot_row[col.at(p.arrows)] < 0) basis.push_back(&p);
    const Index n = static_cast<Index>(basis.size());
    std::map<Index, Index> std_index;  // column -> basis index
    for (Index b = nv; b < n; ++b) std_index[col.at(basis[b]->arrows)] = b;

    auto normal_form = [&](const std::vector<int>& w) {
      Vec<S> out = Vec<S>::Zero(n);
      if (static_cast<int>(w.size()) > L) return out;
      Index c = col.at(w);
      if (pivot_row[c] < 0) {
        out(std_index.at(c)) = one<S>(f);
        return out;
      }
      for (const auto& [sc, b] : std_index) {
        const S& x = ech.reduced(pivot_row[c], sc);
        if (!is_zero(x)) out(b) = -x;
      }
      return out;
    };

    typename Algebra<S>::Data d;
    d.field = f;
    for (Index i = 0; i < n; ++i) {
      const PathInfo& p = *basis[i];
      if (p.vertex >= 0) {
        d.labels.push_back("e" + q.vertices[p.vertex]);
      } else {
        std::string s;
        for (std::size_t k = 0; k < p.arrows.size(); ++k) s += (k ? "*" : "") + q.arrows[p.arrows[k]].label;
        d.labels.push_back(s);
      }
    }
    for (Index i = 0; i < n; ++i) {
      Mat<S> m = Mat<S>::Zero(n, n);
      const PathInfo& x = *basis[i];
      for (Index j = 0; j < n; ++j) {
        const PathInfo& y = *basis[j];
        if (x.source != y.target) continue;
        if (x.vertex >= 0) {
          m(j, j) = one<S>(f);
          continue;
        }
        if (y.vertex >= 0) {
          m(i, j) = one<S>(f);
          continue;
        }
        std::vector<int> w = x.arrows;
        w.insert(w.end(), y.arrows.begin(), y.arrows.end());
        m.col(j) = normal_form(w);
      }
      d.left.push_back(std::move(m));
    }
    d.unit = Vec<S>::Zero(n);
    for (int v = 0; v < nv; ++v) {
      d.unit(v) = one<S>(f);
      d.idempotents.push_back(unit_vec<S>(f, n, v));
    }
    d.vertex_labels = q.vertices;
    Mat<S> rad = Mat<S>::Zero(n, n - nv);
    for (Index i = nv; i < n; ++i) rad(i, i - nv) = one<S>(f);
    d.radical = rad;
    d.provenance.v = typename Provenance<S>::Quiver{q};
    return Algebra<S>::make(std::move(d));
  }
}

template <class S>
AlgebraPtr<S> algebra_from_structure(const FieldSpec& f, std::vector<std::string> labels,
                                     std::vector<Mat<S>> left, Vec<S> unit,
                                     std::vector<Vec<S>> idempotents,
                                     std::vector<std::string> vertex_labels) {
  check_field<S>(f);
  typename Algebra<S>::Data d;
  d.field = f;
  d.labels = std::move(labels);
  d.left = std::move(left);
  d.unit = std::move(unit);
  d.idempotents = std::move(idempotents);
  d.vertex_labels = std::move(vertex_labels);
  d.provenance.v = typename Provenance<S>::Raw{};
  return Algebra<S>::make(std::move(d), true);
}

template <class S>
AlgebraPtr<S> field_algebra(const FieldSpec& f) {
  QuiverPresentation q;
  q.vertices = {"1"};
  return algebra_from_quiver<S>(f, q);
}

template <class S>
AlgebraPtr<S> opposite(const AlgebraPtr<S>& a) {
  if (auto* op = std::get_if<typename Provenance<S>::Opposite>(&a->provenance().v)) return op->original;
  {
    std::lock_guard<std::mutex> lock(a->cache().mu);
    if (auto c = a->cache().opposite.lock()) return c;
  }
  AlgebraPtr<S> out;
  if (auto* t = std::get_if<typename Provenance<S>::Tensor>(&a->provenance().v)) {
    out = tensor_algebra<S>(opposite<S>(t->left), opposite<S>(t->right));
  } else {
    typename Algebra<S>::Data d;
    d.field = a->field();
    d.labels = a->labels();
    for (Index i = 0; i < a->dim(); ++i) d.left.push_back(a->right_matrix(a->basis_vector(i)));
    d.unit = a->unit();
    for (Index v = 0; v < a->num_vertices(); ++v) d.idempotents.push_back(a->idempotent(v));
    d.vertex_labels = a->vertex_labels();
    d.radical = a->radical();
    d.provenance.v = typename Provenance<S>::Opposite{a};
    out = Algebra<S>::make(std::move(d));
  }
  {
    std::lock_guard<std::mutex> lock(a->cache().mu);
    if (auto c = a->cache().opposite.lock()) return c;
    a->cache().opposite = out;
  }
  {
    std::lock_guard<std::mutex> lock(out->cache().mu);
    if (out->cache().opposite.expired()) out->cache().opposite = a;
  }
  return out;
}

namespace {

// Tensor algebras are rebuilt constantly (every bimodule operation asks for
// one), so they are shared while alive.
template <class S>
struct TensorCache {
  std::mutex mu;
  std::map<std::pair<const void*, const void*>, std::weak_ptr<const Algebra<S>>> slots;
  static TensorCache& get() {
    static TensorCache c;
    return c;
  }
};

}  // namespace

template <class S>
AlgebraPtr<S> tensor_algebra(const AlgebraPtr<S>& a, const AlgebraPtr<S>& b) {
  if (!(a->field() == b->field())) throw FieldMismatch("tensor of algebras over different fields");
  auto& cache = TensorCache<S>::get();
  const auto key = std::make_pair(static_cast<const void*>(a.get()), static_cast<const void*>(b.get()));
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.slots.find(key);
    if (it != cache.slots.end())
      if (auto hit = it->second.lock()) return hit;
  }
  const FieldSpec& f = a->field();
  const Index na = a->dim(), nb = b->dim();
  typename Algebra<S>::Data d;
  d.field = f;
  for (Index i = 0; i < na; ++i)
    for (Index j = 0; j < nb; ++j) {
      d.labels.push_back(a->label(i) + "|" + b->label(j));
      d.left.push_back(kron<S>(a->left(i), b->left(j)));
    }
  d.unit = kron<S>(Mat<S>(a->unit()), Mat<S>(b->unit())).col(0);
  for (Index v = 0; v < a->num_vertices(); ++v)
    for (Index w = 0; w < b->num_vertices(); ++w) {
      d.idempotents.push_back(kron<S>(Mat<S>(a->idempotent(v)), Mat<S>(b->idempotent(w))).col(0));
      d.vertex_labels.push_back(a->vertex_label(v) + "|" + b->vertex_label(w));
    }
  Mat<S> ra = kron<S>(a->radical(), identity<S>(f, nb));
  Mat<S> rb = kron<S>(identity<S>(f, na), b->radical());
  d.radical = column_space<S>(hcat<S>({ra, rb}, na * nb));
  d.provenance.v = typename Provenance<S>::Tensor{a, b};
  auto out = Algebra<S>::make(std::move(d));
  std::lock_guard<std::mutex> lock(cache.mu);
  if (auto hit = cache.slots[key].lock()) return hit;
  cache.slots[key] = out;
  return out;
}

template <class S>
AlgebraPtr<S> enveloping(const AlgebraPtr<S>& a) {
  {
    std::lock_guard<std::mutex> lock(a->cache().mu);
    if (auto c = a->cache().enveloping.lock()) return c;
  }
  auto out = tensor_algebra<S>(a, opposite<S>(a));
  std::lock_guard<std::mutex> lock(a->cache().mu);
  if (auto c = a->cache().enveloping.lock()) return c;
  a->cache().enveloping = out;
  return out;
}

template <class S>
std::optional<std::pair<AlgebraPtr<S>, AlgebraPtr<S>>> tensor_factors(const AlgebraPtr<S>& a) {
  if (auto* t = std::get_if<typename Provenance<S>::Tensor>(&a->provenance().v))
    return std::make_pair(t->left, t->right);
  return std::nullopt;
}

template <class S>
bool is_idempotent(const AlgebraPtr<S>& a, const Vec<S>& e) {
  return equal<S>(Mat<S>(a->product(e, e)), Mat<S>(e));
}

template <class S>
CornerData<S> corner(const AlgebraPtr<S>& a, const Vec<S>& e) {
  if (e.size() != a->dim()) throw ShapeMismatch("idempotent has wrong length");
  if (!is_idempotent<S>(a, e)) throw NotIdempotent("corner: element is not idempotent");
  const FieldSpec& f = a->field();
  const Index n = a->dim();
  Mat<S> sand = mul<S>(a->left_matrix(e), a->right_matrix(e));
  auto cols = independent_columns<S>(sand);
  const Index k = static_cast<Index>(cols.size());
  if (k == 0) throw NotIdempotent("corner of the zero idempotent");
  Mat<S> emb(n, k);
  for (Index j = 0; j < k; ++j) emb.col(j) = sand.col(cols[j]);
  SpanCoords<S> sc(emb);

  typename Algebra<S>::Data d;
  d.field = f;
  for (Index j = 0; j < k; ++j) {
    Index hit = -1;
    for (Index i = 0; i < n && hit < 0; ++i)
      if (equal<S>(Mat<S>(emb.col(j)), Mat<S>(a->basis_vector(i)))) hit = i;
    d.labels.push_back(hit >= 0 ? a->label(hit) : "c" + std::to_string(j + 1));
    d.left.push_back(sc.coords(mul<S>(a->left_matrix(emb.col(j)), emb)));
  }
  d.unit = sc.coords(e);

  Vec<S> lam = a->semisimple() * e;
  Vec<S> fsum = Vec<S>::Zero(n);
  std::vector<Index> chosen;
  for (Index v = 0; v < a->num_vertices(); ++v) {
    if (is_zero(lam(v))) continue;
    if (!(lam(v) == one<S>(f))) throw NotIdempotent("corner: idempotent is not 0/1 modulo the radical");
    chosen.push_back(v);
    fsum += a->idempotent(v);
  }
  std::vector<Vec<S>> prims;
  if (equal<S>(Mat<S>(fsum), Mat<S>(e))) {
    for (Index v : chosen) prims.push_back(a->idempotent(v));
  } else {
    // e = u f u^-1 for u = ef + (1-e)(1-f)
    Vec<S> one_minus_e = a->unit() - e, one_minus_f = a->unit() - fsum;
    Vec<S> u = a->product(e, fsum) + a->product(one_minus_e, one_minus_f);
    auto sol = solve<S>(a->left_matrix(u), Mat<S>(a->unit()));
    if (!sol) throw NotIdempotent("corner: conjugating element is not a unit");
    Vec<S> uinv = sol->particular.col(0);
    for (Index v : chosen) prims.push_back(a->product(a->product(u, a->idempotent(v)), uinv));
  }
  for (std::size_t i = 0; i < prims.size(); ++i) {
    d.idempotents.push_back(sc.coords(prims[i]));
    d.vertex_labels.push_back(a->vertex_label(chosen[i]));
  }
  Mat<S> rad_part = mul<S>(sand, a->radical());
  d.radical = sc.coords(column_space<S>(rad_part));
  d.provenance.v = typename Provenance<S>::Corner{a, e, emb};
  return {Algebra<S>::make(std::move(d)), emb};
}

template <class S>
AlgebraPtr<S> morita_ring(const AlgebraPtr<S>& a, const AlgebraPtr<S>& b,
                          const std::vector<Mat<S>>& m_action,
                          const std::vector<Mat<S>>& n_action) {
  if (!(a->field() == b->field())) throw FieldMismatch("Morita ring over different fields");
  const FieldSpec& f = a->field();
  const Index da = a->dim(), db = b->dim();
  if (static_cast<Index>(m_action.size()) != da * db || static_cast<Index>(n_action.size()) != da * db)
    throw ShapeMismatch("Morita ring: bimodule actions must be indexed by the tensor basis");
  const Index dm = m_action.empty() ? 0 : m_action[0].rows();
  const Index dn = n_action.empty() ? 0 : n_action[0].rows();
  const Index oa = 0, ob = da, om = da + db, on = da + db + dm, D = on + dn;

  // rho_M(b_j (x) 1), rho_M(1 (x) a_i^op), rho_N(a_i (x) 1), rho_N(1 (x) b_j^op)
  auto m_left = [&](Index j) {
    Mat<S> s = Mat<S>::Zero(dm, dm);
    for (Index i = 0; i < da; ++i)
      if (!is_zero(a->unit()(i))) s += a->unit()(i) * m_action[j * da + i];
    return s;
  };
  auto m_right = [&](Index i) {
    Mat<S> s = Mat<S>::Zero(dm, dm);
    for (Index j = 0; j < db; ++j)
      if (!is_zero(b->unit()(j))) s += b->unit()(j) * m_action[j * da + i];
    return s;
  };
  auto n_left = [&](Index i) {
    Mat<S> s = Mat<S>::Zero(dn, dn);
    for (Index j = 0; j < db; ++j)
      if (!is_zero(b->unit()(j))) s += b->unit()(j) * n_action[i * db + j];
    return s;
  };
  auto n_right = [&](Index j) {
    Mat<S> s = Mat<S>::Zero(dn, dn);
    for (Index i = 0; i < da; ++i)
      if (!is_zero(a->unit()(i))) s += a->unit()(i) * n_action[i * db + j];
    return s;
  };

  typename Algebra<S>::Data d;
  d.field = f;
  std::vector<Mat<S>> mr(da), nr(db);
  for (Index i = 0; i < da; ++i) mr[i] = m_right(i);
  for (Index j = 0; j < db; ++j) nr[j] = n_right(j);
  for (Index i = 0; i < da; ++i) {
    Mat<S> m = Mat<S>::Zero(D, D);
    m.block(oa, oa, da, da) = a->left(i);
    m.block(on, on, dn, dn) = n_left(i);
    d.left.push_back(std::move(m));
    d.labels.push_back("a." + a->label(i));
  }
  for (Index j = 0; j < db; ++j) {
    Mat<S> m = Mat<S>::Zero(D, D);
    m.block(ob, ob, db, db) = b->left(j);
    m.block(om, om, dm, dm) = m_left(j);
    d.left.push_back(std::move(m));
    d.labels.push_back("b." + b->label(j));
  }
  for (Index k = 0; k < dm; ++k) {
    Mat<S> m = Mat<S>::Zero(D, D);
    for (Index i = 0; i < da; ++i) m.block(om, oa + i, dm, 1) = mr[i].col(k);
    d.left.push_back(std::move(m));
    d.labels.push_back("m" + std::to_string(k + 1));
  }
  for (Index k = 0; k < dn; ++k) {
    Mat<S> m = Mat<S>::Zero(D, D);
    for (Index j = 0; j < db; ++j) m.block(on, ob + j, dn, 1) = nr[j].col(k);
    d.left.push_back(std::move(m));
    d.labels.push_back("n" + std::to_string(k + 1));
  }
  d.unit = Vec<S>::Zero(D);
  d.unit.segment(oa, da) = a->unit();
  d.unit.segment(ob, db) = b->unit();
  for (Index v = 0; v < a->num_vertices(); ++v) {
    Vec<S> e = Vec<S>::Zero(D);
    e.segment(oa, da) = a->idempotent(v);
    d.idempotents.push_back(e);
    d.vertex_labels.push_back("a." + a->vertex_label(v));
  }
  for (Index v = 0; v < b->num_vertices(); ++v) {
    Vec<S> e = Vec<S>::Zero(D);
    e.segment(ob, db) = b->idempotent(v);
    d.idempotents.push_back(e);
    d.vertex_labels.push_back("b." + b->vertex_label(v));
  }
  const Index ra = a->radical().cols(), rb = b->radical().cols();
  Mat<S> rad = Mat<S>::Zero(D, ra + rb + dm + dn);
  rad.block(oa, 0, da, ra) = a->radical();
  rad.block(ob, ra, db, rb) = b->radical();
  for (Index k = 0; k < dm + dn; ++k) rad(om + k, ra + rb + k) = one<S>(f);
  d.radical = rad;
  d.provenance.v = typename Provenance<S>::Morita{a, b, dm, dn};
  return Algebra<S>::make(std::move(d));
}

template <class S>
AlgebraPtr<S> product_algebra(const AlgebraPtr<S>& a, const AlgebraPtr<S>& b) {
  const Index n = a->dim() * b->dim();
  return morita_ring<S>(a, b, std::vector<Mat<S>>(n, Mat<S>(0, 0)), std::vector<Mat<S>>(n, Mat<S>(0, 0)));
}

template <class S>
Vec<S> morita_idempotent(const AlgebraPtr<S>& ring, bool top_left) {
  auto* m = std::get_if<typename Provenance<S>::Morita>(&ring->provenance().v);
  if (!m) throw ValidationError("not a Morita context ring");
  Vec<S> e = Vec<S>::Zero(ring->dim());
  const Index na = m->a->num_vertices();
  for (Index v = 0; v < ring->num_vertices(); ++v)
    if ((v < na) == top_left) e += ring->idempotent(v);
  return e;
}

template <class S>
AlgebraHom<S> algebra_hom(AlgebraPtr<S> source, AlgebraPtr<S> target, Mat<S> matrix) {
  if (matrix.rows() != target->dim() || matrix.cols() != source->dim())
    throw ShapeMismatch("algebra homomorphism has wrong shape");
  bind<S>(matrix, source->field());
  Mat<S> u = source->unit();
  if (!equal<S>(mul<S>(matrix, u), Mat<S>(target->unit()))) throw ValidationError("homomorphism does not preserve 1");
  for (Index i = 0; i < source->dim(); ++i)
    for (Index j = 0; j < source->dim(); ++j) {
      Mat<S> lhs = mul<S>(matrix, Mat<S>(source->left(i).col(j)));
      Vec<S> fi = matrix.col(i), fj = matrix.col(j);
      if (!equal<S>(lhs, Mat<S>(target->product(fi, fj))))
        throw ValidationError("map is not multiplicative at (" + source->label(i) + ", " + source->label(j) + ")");
    }
  return {std::move(source), std::move(target), std::move(matrix)};
}

#define SINGEQ_ALGEBRA(S)                                                                          \
  template class Algebra<S>;                                                                       \
  template bool same_algebra<S>(const AlgebraPtr<S>&, const AlgebraPtr<S>&);                       \
  template void require_same<S>(const AlgebraPtr<S>&, const AlgebraPtr<S>&, const char*);          \
  template AlgebraPtr<S> algebra_from_quiver<S>(const FieldSpec&, const QuiverPresentation&, int); \
  template AlgebraPtr<S> algebra_from_structure<S>(const FieldSpec&, std::vector<std::string>,     \
                                                   std::vector<Mat<S>>, Vec<S>,                    \
                                                   std::vector<Vec<S>>, std::vector<std::string>); \
  template AlgebraPtr<S> field_algebra<S>(const FieldSpec&);                                       \
  template AlgebraPtr<S> opposite<S>(const AlgebraPtr<S>&);                                        \
  template AlgebraPtr<S> tensor_algebra<S>(const AlgebraPtr<S>&, const AlgebraPtr<S>&);            \
  template AlgebraPtr<S> enveloping<S>(const AlgebraPtr<S>&);                                      \
  template std::optional<std::pair<AlgebraPtr<S>, AlgebraPtr<S>>> tensor_factors<S>(               \
      const AlgebraPtr<S>&);                                                                       \
  template bool is_idempotent<S>(const AlgebraPtr<S>&, const Vec<S>&);                             \
  template CornerData<S> corner<S>(const AlgebraPtr<S>&, const Vec<S>&);                           \
  template AlgebraPtr<S> morita_ring<S>(const AlgebraPtr<S>&, const AlgebraPtr<S>&,                \
                                        const std::vector<Mat<S>>&, const std::vector<Mat<S>>&);   \
  template AlgebraPtr<S> product_algebra<S>(const AlgebraPtr<S>&, const AlgebraPtr<S>&);           \
  template Vec<S> morita_idempotent<S>(const AlgebraPtr<S>&, bool);                                \
  template AlgebraHom<S> algebra_hom<S>(AlgebraPtr<S>, AlgebraPtr<S>, Mat<S>);

SINGEQ_FOR_EACH_SCALAR(SINGEQ_ALGEBRA)

}  // namespace singeq
