#pragma once

#include <optional>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "singeq/scalar.hpp"

namespace singeq {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

// Reduced row echelon form. Pivots are the first nonzero entries, scanning
// columns left to right.
template <class S>
struct Echelon {
  Mat<S> reduced;
  std::vector<Index> pivots;
};

template <class S>
Echelon<S> echelon(Mat<S> m);

template <class S>
Index rank(const Mat<S>& m);

// Columns form a basis of {x : m x = 0}; one vector per free column.
template <class S>
Mat<S> kernel_basis(const Mat<S>& m);

template <class S>
struct Solution {
  Mat<S> particular;
  Mat<S> kernel;
};

// Solves m X = b for every column of b at once.
template <class S>
std::optional<Solution<S>> solve(const Mat<S>& m, const Mat<S>& b);

template <class S>
std::optional<Mat<S>> inverse(const Mat<S>& m);

// Indices of columns of m forming a basis of its column space.
template <class S>
std::vector<Index> independent_columns(const Mat<S>& m);

template <class S>
Mat<S> column_space(const Mat<S>& m);

// Standard basis indices that complete the columns of u to a basis.
template <class S>
std::vector<Index> complement_indices(const Mat<S>& u);

// Coordinates with respect to a basis u of a subspace: picks rows of u that
// form an invertible square block.
template <class S>
class SpanCoords {
 public:
  SpanCoords() = default;
  explicit SpanCoords(const Mat<S>& u);

  Index dim() const { return static_cast<Index>(rows_.size()); }
  Index ambient() const { return basis_.rows(); }
  const Mat<S>& basis() const { return basis_; }
  const std::vector<Index>& rows() const { return rows_; }

  // assumes the columns of x lie in the span
  Mat<S> coords(const Mat<S>& x) const;
  Vec<S> coords(const Vec<S>& x) const;
  bool contains(const Mat<S>& x) const;
  // left inverse as a dim x ambient matrix
  Mat<S> left_inverse() const;

 private:
  Mat<S> basis_;
  std::vector<Index> rows_;
  Mat<S> inv_;
};

// Linear quotient V / U with a chosen complement of standard vectors.
template <class S>
struct Quotient {
  Mat<S> projection;  // (n - k) x n, kills U
  Mat<S> section;     // n x (n - k), projection * section = 1
};

template <class S>
Quotient<S> quotient(const Mat<S>& u, Index n);

template <class S>
bool is_zero(const Mat<S>& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!ScalarTraits<S>::is_zero(m(i, j))) return false;
  return true;
}

template <class S>
Mat<S> zeros(Index r, Index c) {
  return Mat<S>::Zero(r, c);
}

template <class S>
Mat<S> identity(const FieldSpec& f, Index n) {
  Mat<S> m = Mat<S>::Zero(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = ScalarTraits<S>::from_int(f, 1);
  return m;
}

template <class S>
Mat<S> kron(const Mat<S>& a, const Mat<S>& b);

template <class S>
Mat<S> hcat(const std::vector<Mat<S>>& blocks, Index rows);

template <class S>
Mat<S> vcat(const std::vector<Mat<S>>& blocks, Index cols);

template <class S>
Mat<S> block_diag(const std::vector<Mat<S>>& blocks);

template <class S>
Mat<S> random_matrix(const FieldSpec& f, Index r, Index c, std::mt19937_64& rng);

template <class S>
Mat<S> mul(const Mat<S>& a, const Mat<S>& b);

template <class S>
bool equal(const Mat<S>& a, const Mat<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (!(a(i, j) == b(i, j))) return false;
  return true;
}

// Entries that are unbound integer literals get the field's modulus.
template <class S>
void bind(Mat<S>& m, const FieldSpec& f);

}  // namespace singeq
