#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "singeq/linalg.hpp"

namespace singeq {

struct QuiverArrow {
  std::string label;
  std::string source;
  std::string target;
  bool operator==(const QuiverArrow&) const = default;
};

// A path is written as a product: {"a", "b"} is a*b, which runs b first.
struct RelationTerm {
  long long num = 1;
  long long den = 1;
  std::vector<std::string> path;
  bool operator==(const RelationTerm&) const = default;
};

struct QuiverRelation {
  std::vector<RelationTerm> terms;
  bool operator==(const QuiverRelation&) const = default;
};

struct QuiverPresentation {
  std::vector<std::string> vertices;
  std::vector<QuiverArrow> arrows;
  std::vector<QuiverRelation> relations;
  bool operator==(const QuiverPresentation&) const = default;
};

template <class S>
class Algebra;
template <class S>
using AlgebraPtr = std::shared_ptr<const Algebra<S>>;

template <class S>
struct Provenance {
  struct Quiver {
    QuiverPresentation presentation;
  };
  struct Opposite {
    AlgebraPtr<S> original;
  };
  // basis index (i, j) sits at i * dim(right) + j
  struct Tensor {
    AlgebraPtr<S> left;
    AlgebraPtr<S> right;
  };
  struct Corner {
    AlgebraPtr<S> parent;
    Vec<S> idempotent;
    Mat<S> embedding;
  };
  // basis blocks in the order a, b, m, n
  struct Morita {
    AlgebraPtr<S> a;
    AlgebraPtr<S> b;
    Index dim_m = 0;
    Index dim_n = 0;
  };
  struct Raw {};
  using Variant = std::variant<Raw, Quiver, Opposite, Tensor, Corner, Morita>;
  Variant v;
};

// An element of rad that together with rad^2 generates rad; it lies in
// e_target rad e_source.
template <class S>
struct ArrowElement {
  Index source;
  Index target;
  Vec<S> element;
};

// A e_v with basis b_{i_r} e_v for the listed i_r.
template <class S>
struct ProjectiveData {
  Index vertex = 0;
  Mat<S> basis;
  std::vector<Index> from_basis;
  Vec<S> generator;  // coordinates of e_v
  SpanCoords<S> coords;
};

template <class S>
class Algebra {
 public:
  struct Data {
    FieldSpec field;
    std::vector<std::string> labels;
    std::vector<Mat<S>> left;  // column j of left[i] holds b_i * b_j
    Vec<S> unit;
    std::vector<Vec<S>> idempotents;
    std::vector<std::string> vertex_labels;
    std::optional<Mat<S>> radical;
    Provenance<S> provenance;
  };

  // Checks shapes, idempotents and elementarity; full associativity is only
  // checked when validate is set.
  static AlgebraPtr<S> make(Data d, bool validate = false);

  const FieldSpec& field() const { return d_.field; }
  Index dim() const { return static_cast<Index>(d_.left.size()); }
  Index num_vertices() const { return static_cast<Index>(d_.idempotents.size()); }
  const std::string& label(Index i) const { return d_.labels[i]; }
  const std::vector<std::string>& labels() const { return d_.labels; }
  const std::string& vertex_label(Index v) const { return d_.vertex_labels[v]; }
  const std::vector<std::string>& vertex_labels() const { return d_.vertex_labels; }
  const Mat<S>& left(Index i) const { return d_.left[i]; }
  const Vec<S>& unit() const { return d_.unit; }
  const Vec<S>& idempotent(Index v) const { return d_.idempotents[v]; }
  const Mat<S>& radical() const { return *d_.radical; }
  // n x dim; kills rad and sends e_v to the v-th unit vector
  const Mat<S>& semisimple() const { return semisimple_; }
  const std::vector<ArrowElement<S>>& arrows() const { return arrows_; }
  const ProjectiveData<S>& projective(Index v) const { return projectives_[v]; }
  const Provenance<S>& provenance() const { return d_.provenance; }
  std::uint64_t fingerprint() const { return fingerprint_; }

  Vec<S> basis_vector(Index i) const;
  Vec<S> scalar(long long c) const;
  Vec<S> product(const Vec<S>& x, const Vec<S>& y) const;
  Mat<S> left_matrix(const Vec<S>& x) const;
  Mat<S> right_matrix(const Vec<S>& y) const;
  Index find_label(const std::string& label) const;  // -1 if absent
  Index find_vertex(const std::string& label) const;

  // Cache slots used by opposite() and enveloping().
  struct Cache {
    std::mutex mu;
    std::weak_ptr<const Algebra<S>> opposite;
    std::weak_ptr<const Algebra<S>> enveloping;
  };
  Cache& cache() const { return *cache_; }

 private:
  explicit Algebra(Data d) : d_(std::move(d)), cache_(std::make_unique<Cache>()) {}
  void derive(bool validate);

  Data d_;
  Mat<S> semisimple_;
  std::vector<ArrowElement<S>> arrows_;
  std::vector<ProjectiveData<S>> projectives_;
  std::uint64_t fingerprint_ = 0;
  std::unique_ptr<Cache> cache_;
};

template <class S>
bool same_algebra(const AlgebraPtr<S>& a, const AlgebraPtr<S>& b);

template <class S>
void require_same(const AlgebraPtr<S>& a, const AlgebraPtr<S>& b, const char* where);

template <class S>
AlgebraPtr<S> algebra_from_quiver(const FieldSpec& f, const QuiverPresentation& q,
                                  int nilpotency_bound = 30);

template <class S>
AlgebraPtr<S> algebra_from_structure(const FieldSpec& f, std::vector<std::string> labels,
                                     std::vector<Mat<S>> left, Vec<S> unit,
                                     std::vector<Vec<S>> idempotents,
                                     std::vector<std::string> vertex_labels);

template <class S>
AlgebraPtr<S> field_algebra(const FieldSpec& f);

template <class S>
AlgebraPtr<S> opposite(const AlgebraPtr<S>& a);

template <class S>
AlgebraPtr<S> tensor_algebra(const AlgebraPtr<S>& a, const AlgebraPtr<S>& b);

template <class S>
AlgebraPtr<S> enveloping(const AlgebraPtr<S>& a);

// the factors of a tensor algebra, or nullopt
template <class S>
std::optional<std::pair<AlgebraPtr<S>, AlgebraPtr<S>>> tensor_factors(const AlgebraPtr<S>& a);

template <class S>
struct CornerData {
  AlgebraPtr<S> algebra;
  Mat<S> embedding;  // dim(parent) x dim(corner)
};

template <class S>
CornerData<S> corner(const AlgebraPtr<S>& a, const Vec<S>& e);

// m_action acts on M (a b-a bimodule, indexed by the basis of b (x) a^op),
// n_action acts on N (an a-b bimodule).
template <class S>
AlgebraPtr<S> morita_ring(const AlgebraPtr<S>& a, const AlgebraPtr<S>& b,
                          const std::vector<Mat<S>>& m_action,
                          const std::vector<Mat<S>>& n_action);

template <class S>
AlgebraPtr<S> product_algebra(const AlgebraPtr<S>& a, const AlgebraPtr<S>& b);

// sum of the idempotents of the a-block (top_left) or b-block of a Morita ring
template <class S>
Vec<S> morita_idempotent(const AlgebraPtr<S>& ring, bool top_left);

template <class S>
struct AlgebraHom {
  AlgebraPtr<S> source;
  AlgebraPtr<S> target;
  Mat<S> matrix;  // dim(target) x dim(source)
};

template <class S>
AlgebraHom<S> algebra_hom(AlgebraPtr<S> source, AlgebraPtr<S> target, Mat<S> matrix);

template <class S>
bool is_idempotent(const AlgebraPtr<S>& a, const Vec<S>& e);

}  // namespace singeq
