#include "singeq/linalg.hpp"

#include <utility>

#include "instantiate.hpp"

namespace singeq {

template <class S>
Echelon<S> echelon(Mat<S> m) {
  Echelon<S> e;
  const Index rows = m.rows(), cols = m.cols();
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index piv = -1;
    for (Index i = r; i < rows; ++i)
      if (!is_zero(m(i, c))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) m.row(piv).swap(m.row(r));
    S inv = S(1) / m(r, c);
    for (Index j = c; j < cols; ++j)
      if (!is_zero(m(r, j))) m(r, j) *= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      S f = m(i, c);
      for (Index j = c; j < cols; ++j)
        if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
    }
    e.pivots.push_back(c);
    ++r;
  }
  e.reduced = std::move(m);
  return e;
}

template <class S>
Index rank(const Mat<S>& m) {
  return static_cast<Index>(echelon<S>(m).pivots.size());
}

template <class S>
Mat<S> kernel_basis(const Mat<S>& m) {
  auto e = echelon<S>(m);
  const Index n = m.cols();
  std::vector<char> is_pivot(n, 0);
  for (Index c : e.pivots) is_pivot[c] = 1;
  Mat<S> k = Mat<S>::Zero(n, n - static_cast<Index>(e.pivots.size()));
  Index col = 0;
  for (Index f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    k(f, col) = S(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      if (!is_zero(e.reduced(r, f))) k(e.pivots[r], col) = -e.reduced(r, f);
    ++col;
  }
  return k;
}

template <class S>
std::optional<Solution<S>> solve(const Mat<S>& m, const Mat<S>& b) {
  if (m.rows() != b.rows())
    throw ShapeMismatch("solve: " + std::to_string(m.rows()) + " rows against " +
                        std::to_string(b.rows()));
  const Index n = m.cols();
  Mat<S> aug(m.rows(), n + b.cols());
  aug << m, b;
  auto e = echelon<S>(aug);
  Index rk = 0;
  for (Index c : e.pivots) {
    if (c >= n) return std::nullopt;
    ++rk;
  }
  Solution<S> s;
  s.particular = Mat<S>::Zero(n, b.cols());
  for (Index r = 0; r < rk; ++r)
    for (Index j = 0; j < b.cols(); ++j) s.particular(e.pivots[r], j) = e.reduced(r, n + j);
  s.kernel = kernel_basis<S>(m);
  return s;
}

template <class S>
std::optional<Mat<S>> inverse(const Mat<S>& m) {
  if (m.rows() != m.cols()) throw ShapeMismatch("inverse of a non-square matrix");
  Mat<S> id = Mat<S>::Zero(m.rows(), m.rows());
  for (Index i = 0; i < m.rows(); ++i) id(i, i) = S(1);
  auto s = solve<S>(m, id);
  if (!s || s->kernel.cols() != 0) return std::nullopt;
  return s->particular;
}

template <class S>
std::vector<Index> independent_columns(const Mat<S>& m) {
  return echelon<S>(m).pivots;
}

template <class S>
Mat<S> column_space(const Mat<S>& m) {
  auto idx = independent_columns<S>(m);
  Mat<S> out(m.rows(), static_cast<Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) out.col(j) = m.col(idx[j]);
  return out;
}

template <class S>
std::vector<Index> complement_indices(const Mat<S>& u) {
  const Index n = u.rows();
  Mat<S> aug(n, u.cols() + n);
  aug.leftCols(u.cols()) = u;
  aug.rightCols(n).setZero();
  for (Index i = 0; i < n; ++i) aug(i, u.cols() + i) = S(1);
  std::vector<Index> out;
  for (Index c : independent_columns<S>(aug))
    if (c >= u.cols()) out.push_back(c - u.cols());
  return out;
}

template <class S>
SpanCoords<S>::SpanCoords(const Mat<S>& u) : basis_(u) {
  rows_ = independent_columns<S>(Mat<S>(u.transpose()));
  if (static_cast<Index>(rows_.size()) != u.cols())
    throw ShapeMismatch("SpanCoords: columns are not independent");
  Mat<S> sq(u.cols(), u.cols());
  for (std::size_t i = 0; i < rows_.size(); ++i) sq.row(i) = u.row(rows_[i]);
  auto inv = inverse<S>(sq);
  inv_ = std::move(*inv);
}

template <class S>
Mat<S> SpanCoords<S>::coords(const Mat<S>& x) const {
  Mat<S> sel(dim(), x.cols());
  for (std::size_t i = 0; i < rows_.size(); ++i) sel.row(i) = x.row(rows_[i]);
  return mul<S>(inv_, sel);
}

template <class S>
Vec<S> SpanCoords<S>::coords(const Vec<S>& x) const {
  Mat<S> m = x;
  return coords(m).col(0);
}

template <class S>
bool SpanCoords<S>::contains(const Mat<S>& x) const {
  return equal<S>(mul<S>(basis_, coords(x)), x);
}

template <class S>
Mat<S> SpanCoords<S>::left_inverse() const {
  Mat<S> l = Mat<S>::Zero(dim(), ambient());
  for (std::size_t i = 0; i < rows_.size(); ++i) l.col(rows_[i]) = inv_.col(i);
  return l;
}

template <class S>
Quotient<S> quotient(const Mat<S>& u, Index n) {
  Mat<S> basis = column_space<S>(u);
  auto comp = complement_indices<S>(basis);
  const Index k = basis.cols(), q = static_cast<Index>(comp.size());
  Mat<S> full(n, k + q);
  full.leftCols(k) = basis;
  full.rightCols(q).setZero();
  for (Index j = 0; j < q; ++j) full(comp[j], k + j) = S(1);
  Mat<S> inv = *inverse<S>(full);
  Quotient<S> out;
  out.projection = inv.bottomRows(q);
  out.section = full.rightCols(q);
  return out;
}

template <class S>
Mat<S> kron(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> out = Mat<S>::Zero(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i) {
      if (is_zero(a(i, j))) continue;
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  return out;
}

template <class S>
Mat<S> hcat(const std::vector<Mat<S>>& blocks, Index rows) {
  Index cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows) throw ShapeMismatch("hcat: row counts differ");
    cols += b.cols();
  }
  Mat<S> out(rows, cols);
  Index at = 0;
  for (const auto& b : blocks) {
    out.middleCols(at, b.cols()) = b;
    at += b.cols();
  }
  return out;
}

template <class S>
Mat<S> vcat(const std::vector<Mat<S>>& blocks, Index cols) {
  Index rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw ShapeMismatch("vcat: column counts differ");
    rows += b.rows();
  }
  Mat<S> out(rows, cols);
  Index at = 0;
  for (const auto& b : blocks) {
    out.middleRows(at, b.rows()) = b;
    at += b.rows();
  }
  return out;
}

template <class S>
Mat<S> block_diag(const std::vector<Mat<S>>& blocks) {
  Index r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  Mat<S> out = Mat<S>::Zero(r, c);
  r = c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

template <class S>
Mat<S> random_matrix(const FieldSpec& f, Index r, Index c, std::mt19937_64& rng) {
  Mat<S> m(r, c);
  for (Index j = 0; j < c; ++j)
    for (Index i = 0; i < r; ++i) m(i, j) = ScalarTraits<S>::random(f, rng);
  return m;
}

// Skips zero entries of a; most matrices here are sparse.
template <class S>
Mat<S> mul(const Mat<S>& a, const Mat<S>& b) {
  if (a.cols() != b.rows())
    throw ShapeMismatch("mul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                        " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  Mat<S> out = Mat<S>::Zero(a.rows(), b.cols());
  for (Index j = 0; j < b.cols(); ++j)
    for (Index k = 0; k < a.cols(); ++k) {
      const S& bkj = b(k, j);
      if (is_zero(bkj)) continue;
      for (Index i = 0; i < a.rows(); ++i) {
        const S& aik = a(i, k);
        if (!is_zero(aik)) out(i, j) += aik * bkj;
      }
    }
  return out;
}

template <class S>
void bind(Mat<S>& m, const FieldSpec& f) {
  if constexpr (std::is_same_v<S, Fp>) {
    for (Index j = 0; j < m.cols(); ++j)
      for (Index i = 0; i < m.rows(); ++i)
        if (m(i, j).modulus() == 0) m(i, j) = Fp(m(i, j).value(), f.p);
  } else {
    (void)m;
    (void)f;
  }
}

#define SINGEQ_LINALG(S)                                                               \
  template Echelon<S> echelon<S>(Mat<S>);                                              \
  template Index rank<S>(const Mat<S>&);                                               \
  template Mat<S> kernel_basis<S>(const Mat<S>&);                                      \
  template std::optional<Solution<S>> solve<S>(const Mat<S>&, const Mat<S>&);          \
  template std::optional<Mat<S>> inverse<S>(const Mat<S>&);                            \
  template std::vector<Index> independent_columns<S>(const Mat<S>&);                   \
  template Mat<S> column_space<S>(const Mat<S>&);                                      \
  template std::vector<Index> complement_indices<S>(const Mat<S>&);                    \
  template class SpanCoords<S>;                                                        \
  template Quotient<S> quotient<S>(const Mat<S>&, Index);                              \
  template Mat<S> kron<S>(const Mat<S>&, const Mat<S>&);                               \
  template Mat<S> hcat<S>(const std::vector<Mat<S>>&, Index);                          \
  template Mat<S> vcat<S>(const std::vector<Mat<S>>&, Index);                          \
  template Mat<S> block_diag<S>(const std::vector<Mat<S>>&);                           \
  template Mat<S> random_matrix<S>(const FieldSpec&, Index, Index, std::mt19937_64&); \
  template Mat<S> mul<S>(const Mat<S>&, const Mat<S>&);                                \
  template void bind<S>(Mat<S>&, const FieldSpec&);

SINGEQ_FOR_EACH_SCALAR(SINGEQ_LINALG)

}  // namespace singeq
