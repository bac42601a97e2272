#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "singeq/algebra.hpp"

namespace singeq {

enum class Tri { False, True, Unknown };

const char* to_string(Tri t);

// Left module given by the action of every basis element of the algebra.
template <class S>
class Module {
 public:
  Module() = default;
  Module(AlgebraPtr<S> alg, std::vector<Mat<S>> action, Index dim);

  const AlgebraPtr<S>& algebra() const { return alg_; }
  const FieldSpec& field() const { return alg_->field(); }
  Index dim() const { return dim_; }
  const Mat<S>& action(Index i) const { return rep_->action[i]; }
  const std::vector<Mat<S>>& actions() const { return rep_->action; }
  const Mat<S>& idempotent_action(Index v) const { return rep_->idempotent[v]; }
  // basis of e_v M
  const Mat<S>& vertex_space(Index v) const { return rep_->vertex_space[v]; }
  Mat<S> act(const Vec<S>& a) const;

 private:
  struct Rep {
    std::vector<Mat<S>> action;
    std::vector<Mat<S>> idempotent;
    std::vector<Mat<S>> vertex_space;
  };
  AlgebraPtr<S> alg_;
  Index dim_ = 0;
  std::shared_ptr<const Rep> rep_;
};

// Checks unit and multiplicativity; throws InvalidModule.
template <class S>
void validate_module(const Module<S>& m);

// Action given on some algebra elements; closes under products and checks
// consistency. Elements are vectors in the algebra.
template <class S>
Module<S> module_from_generators(const AlgebraPtr<S>& a, Index dim,
                                 const std::vector<std::pair<Vec<S>, Mat<S>>>& gens);

template <class S>
Module<S> regular_module(const AlgebraPtr<S>& a);

template <class S>
Module<S> projective_module(const AlgebraPtr<S>& a, Index v);

// direct sum of A e_v over the listed vertices
template <class S>
Module<S> projective_sum(const AlgebraPtr<S>& a, const std::vector<Index>& vertices);

template <class S>
Module<S> simple_module(const AlgebraPtr<S>& a, Index v);

template <class S>
Module<S> zero_module(const AlgebraPtr<S>& a);

template <class S>
Module<S> direct_sum(const std::vector<Module<S>>& parts);

template <class S>
Module<S> direct_sum(const Module<S>& x, const Module<S>& y) {
  return direct_sum<S>(std::vector<Module<S>>{x, y});
}

// Along an algebra map f: A -> B, a B-module becomes an A-module.
template <class S>
Module<S> restrict_along(const Module<S>& m, const AlgebraHom<S>& f);

template <class S>
bool is_homomorphism(const Module<S>& source, const Module<S>& target, const Mat<S>& f);

// Module structure on an invariant subspace with basis u.
template <class S>
Module<S> submodule(const Module<S>& m, const Mat<S>& u);

template <class S>
struct QuotientModule {
  Module<S> module;
  Mat<S> projection;
  Mat<S> section;
};

template <class S>
QuotientModule<S> quotient_module(const Module<S>& m, const Mat<S>& u);

template <class S>
struct KernelModule {
  Module<S> module;
  Mat<S> inclusion;
};

template <class S>
KernelModule<S> kernel(const Module<S>& source, const Mat<S>& f);

template <class S>
QuotientModule<S> cokernel(const Module<S>& target, const Mat<S>& f);

// basis of rad(A) M
template <class S>
Mat<S> radical_of(const Module<S>& m);

template <class S>
std::vector<Index> top(const Module<S>& m);

template <class S>
struct ProjectiveCover {
  Module<S> projective;
  std::vector<Index> vertices;
  Mat<S> generators;  // columns in M, one per summand
  Mat<S> epi;         // dim M x dim P
};

template <class S>
ProjectiveCover<S> projective_cover(const Module<S>& m);

// Map from the sum of A e_v (v in vertices) sending the v-th generator to
// images.col(i), which must lie in e_v N.
template <class S>
Mat<S> map_from_projective(const AlgebraPtr<S>& a, const std::vector<Index>& vertices,
                           const Mat<S>& images, const Module<S>& n);

// column offset of each summand in projective_sum(a, vertices)
template <class S>
std::vector<Index> summand_offsets(const AlgebraPtr<S>& a, const std::vector<Index>& vertices);

template <class S>
Module<S> syzygy(const Module<S>& m, int n = 1);

template <class S>
bool is_projective(const Module<S>& m);

// Omega^first and Omega^second found isomorphic and nonzero, first < second.
struct Periodicity {
  int first = 0;
  int second = 0;
};

struct ProjDim {
  enum class Kind { Zero, Finite, ExceedsCutoff };
  Kind kind = Kind::Zero;
  int value = 0;
  std::optional<Periodicity> periodic;

  bool finite() const { return kind != Kind::ExceedsCutoff; }
  // 0 for the zero module
  int level() const { return kind == Kind::Finite ? value : 0; }
  std::string describe() const;
};

template <class S>
ProjDim projective_dimension(const Module<S>& m, int cutoff, std::uint64_t seed = 0);

// Basis of Hom_A(m, n) as dim(n) x dim(m) matrices.
template <class S>
std::vector<Mat<S>> hom_space(const Module<S>& m, const Module<S>& n);

template <class S>
struct IsoResult {
  enum class Kind { Found, Absent, Inconclusive };
  Kind kind = Kind::Inconclusive;
  Mat<S> iso;
  Tri as_tri() const {
    return kind == Kind::Found ? Tri::True : kind == Kind::Absent ? Tri::False : Tri::Unknown;
  }
};

template <class S>
IsoResult<S> find_iso(const Module<S>& m, const Module<S>& n, std::uint64_t seed, int trials = 20);

template <class S>
struct Stripped {
  Module<S> core;
  std::vector<Index> removed;  // multiplicity of each A e_v split off
};

template <class S>
Stripped<S> strip_projectives(const Module<S>& m);

template <class S>
Tri stable_iso(const Module<S>& m, const Module<S>& n, std::uint64_t seed, int trials = 20);

template <class S>
bool is_indecomposable(const Module<S>& m);

template <class S>
Index ext_dim(const Module<S>& m, const Module<S>& n, int i);

}  // namespace singeq
