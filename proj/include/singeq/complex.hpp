#pragma once

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "singeq/bimodule.hpp"

namespace singeq {

// Bounded chain complex, homological indexing: d_n : X_n -> X_{n-1}.
// Terms live over one algebra; when that algebra is L (x) R^op the complex is
// also read as a complex of L-R bimodules.
template <class S>
class Complex {
 public:
  Complex() = default;
  // terms[i] sits in degree lo + i; diffs[i] is d_{lo+i}, diffs[0] is ignored.
  // Throws InvalidComplex unless every d is a homomorphism and d^2 = 0.
  Complex(AlgebraPtr<S> alg, int lo, std::vector<Module<S>> terms, std::vector<Mat<S>> diffs);

  const AlgebraPtr<S>& algebra() const { return alg_; }
  const AlgebraPtr<S>& left() const { return left_; }
  const AlgebraPtr<S>& right() const { return right_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(terms_.size()) - 1; }
  bool empty() const { return terms_.empty(); }
  const Module<S>& term(int n) const;
  Mat<S> d(int n) const;
  Bimod<S> bimod(int n) const { return {term(n), left_, right_}; }
  // drop the bimodule reading and use the terms as left (resp. right) modules
  Complex<S> as_left() const;
  Complex<S> as_right() const;
  // explicit sides; sides_algebra(left, right) must be the algebra
  Complex<S> with_sides(AlgebraPtr<S> left, AlgebraPtr<S> right) const;
  Complex<S> with_sides_of(const Complex<S>& other) const { return with_sides(other.left_, other.right_); }
  // the same complex with its empty ends cut off
  Complex<S> trimmed() const;

 private:
  AlgebraPtr<S> alg_;
  AlgebraPtr<S> left_;
  AlgebraPtr<S> right_;
  int lo_ = 0;
  std::vector<Module<S>> terms_;
  std::vector<Mat<S>> diffs_;
  Module<S> zero_;
};

template <class S>
class ChainMap {
 public:
  ChainMap() = default;
  // comps maps a degree to the component; missing degrees are zero.
  ChainMap(Complex<S> source, Complex<S> target, std::map<int, Mat<S>> comps);

  const Complex<S>& source() const { return source_; }
  const Complex<S>& target() const { return target_; }
  Mat<S> at(int n) const;

 private:
  Complex<S> source_;
  Complex<S> target_;
  std::map<int, Mat<S>> comps_;
};

template <class S>
Complex<S> zero_complex(const AlgebraPtr<S>& a);

template <class S>
Complex<S> stalk(const Module<S>& m, int degree = 0);

template <class S>
ChainMap<S> identity_map(const Complex<S>& c);

template <class S>
ChainMap<S> zero_map(const Complex<S>& source, const Complex<S>& target);

template <class S>
ChainMap<S> compose(const ChainMap<S>& g, const ChainMap<S>& f);

// stalk(f) for a module map f : m -> n
template <class S>
ChainMap<S> stalk_map(const Module<S>& m, const Module<S>& n, const Mat<S>& f, int degree = 0);

template <class S>
Module<S> homology(const Complex<S>& c, int n);

template <class S>
bool is_exact(const Complex<S>& c);

// sum of (-1)^n dim H_n
template <class S>
long long euler_characteristic(const Complex<S>& c);

template <class S>
Complex<S> shift(const Complex<S>& c, int n);

template <class S>
struct Cone {
  Complex<S> complex;
  ChainMap<S> inclusion;   // target -> cone
  ChainMap<S> projection;  // cone -> shift(source, 1)
};

// Cone_n = X_{n-1} + Y_n, d(x, y) = (-dx, f x + dy)
template <class S>
Cone<S> cone(const ChainMap<S>& f);

template <class S>
bool is_quasi_iso(const ChainMap<S>& f);

template <class S>
struct HardTruncation {
  Complex<S> quotient;    // degrees >= m
  ChainMap<S> projection;
  Complex<S> sub;         // degrees < m
};

template <class S>
HardTruncation<S> hard_truncate_below(const Complex<S>& c, int m);

// Total complex of X (x)_R Y for a complex X of L-R bimodules and a complex Y
// whose left algebra is R. d = d (x) 1 + (-1)^p 1 (x) d.
template <class S>
struct TensorComplex {
  Complex<S> complex;
  std::map<std::pair<int, int>, TensorProduct<S>> blocks;
  std::map<std::pair<int, int>, Index> offsets;  // of block (p, q) in degree p + q
};

template <class S>
TensorComplex<S> tensor_complexes(const Complex<S>& x, const Complex<S>& y);

// Hom_L(P, L) for a complex P of L-R bimodules: Hom_L(P_p, L) sits in degree -p
// and the differential sends f to (-1)^p f d_{p+1}.
template <class S>
struct HomComplex {
  Complex<S> complex;
  std::map<int, HomBimodule<S>> homs;  // keyed by p
};

template <class S>
HomComplex<S> hom_complex_regular(const Complex<S>& p);

// Hom_L(P, P) as a complex of R-R bimodules, D f = d f - (-1)^n f d.
template <class S>
struct EndComplex {
  Complex<S> complex;
  std::map<std::pair<int, int>, HomBimodule<S>> homs;  // (p, q): Hom(P_p, P_q)
  std::map<std::pair<int, int>, Index> offsets;        // in degree q - p
};

template <class S>
EndComplex<S> end_complex(const Complex<S>& p);

// Minimal projective resolution of a bounded complex, realised lazily upward
// from the bottom degree. Copies share the memo.
template <class S>
class Resolution {
 public:
  explicit Resolution(Complex<S> c);

  const Complex<S>& target() const { return st_->c; }
  const Module<S>& term(int n) const;
  const std::vector<Index>& vertices(int n) const;
  Mat<S> d(int n) const;
  Mat<S> rho(int n) const;
  // P_{lo..through} with the hard cut on top, and its map to the target
  Complex<S> complex(int through) const;
  ChainMap<S> map(int through) const;
  // coker(d_{n+1} : P_{n+1} -> P_n); needs n >= hi of the target
  QuotientModule<S> tail(int n) const;
  int realized() const;

 private:
  struct State {
    Complex<S> c;
    Module<S> zero;
    std::mutex mu;
    // deques keep references stable while the memo grows
    std::deque<Module<S>> terms;
    std::deque<std::vector<Index>> verts;
    std::vector<Mat<S>> d;
    std::vector<Mat<S>> rho;
  };
  void extend(int n) const;
  std::shared_ptr<State> st_;
};

template <class S>
struct Resolved {
  Complex<S> complex;
  ChainMap<S> rho;
};

template <class S>
Resolved<S> resolve_complex(const Complex<S>& c, int through);

template <class S>
Module<S> tail_syzygy(const Complex<S>& c, int n);

// L = (tail(s) -> P_{s-1} -> ... -> P_lo) with its quasi-isomorphism to c.
template <class S>
struct Truncation {
  Complex<S> complex;
  ChainMap<S> map;
  int s = 0;
};

template <class S>
Truncation<S> truncate_resolution(const Resolution<S>& r, int s);

struct Perfection {
  enum class Kind { Perfect, NotPerfectWithinCutoff };
  Kind kind = Kind::Perfect;
  bool zero = false;  // quasi-isomorphic to 0
  int bound = 0;      // top degree of the minimal projective model
  int cutoff = 0;
  // two isomorphic nonprojective tail syzygies: the resolution never stops
  std::optional<Periodicity> periodic;

  bool perfect() const { return kind == Kind::Perfect; }
  bool certified_infinite() const { return !perfect() && periodic.has_value(); }
};

template <class S>
Perfection is_perfect(const Complex<S>& c, int cutoff = 50, std::uint64_t seed = 0);

template <class S>
Perfection is_perfect(const Resolution<S>& r, int cutoff = 50, std::uint64_t seed = 0);

// restriction of a bimodule complex to one side
template <class S>
Complex<S> restrict_complex(const Complex<S>& c, Side side);

// d_n maps into rad of X_{n-1} for every n
template <class S>
bool is_minimal(const Complex<S>& c);

}  // namespace singeq
