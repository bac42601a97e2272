#pragma once

#include <atomic>
#include <optional>

#include "singeq/gorenstein.hpp"
#include "singeq/report.hpp"

namespace singeq {

// Complexes x of B-A bimodules live over B (x) A^op with left() = B and
// right() = A. The functor is x (x)_A - : D(A) -> D(B).

// Running totals of the self-checks done on every truncation produced by
// truncate_per_fact: the map must be a quasi-isomorphism and the top term
// projective over the required sides.
struct TruncationAudit {
  std::atomic<long> runs{0};
  std::atomic<long> failures{0};
};

TruncationAudit& truncation_audit();

enum class Sides { Both, Right };

// First s >= max(lo, hi) (or exactly `requested`) where the top term of the
// truncation is projective over the given sides, searching at most
// `max_extra` degrees past the start.
template <class S>
std::optional<Truncation<S>> find_truncation(const Resolution<S>& r, Sides sides, int max_extra,
                                             std::optional<int> requested = std::nullopt);

// L with L_j projective over B (x) A^op for j < s and L_s projective over B
// and over A^op. Checks that x is perfect on both sides (HypothesisFailed).
template <class S>
Truncation<S> truncate_per_fact(const Complex<S>& x, int cutoff, std::optional<int> s = std::nullopt,
                                std::uint64_t seed = 0);

// A -> Hom_B(L, L): a goes to right multiplication by a on every L_p.
template <class S>
ChainMap<S> unit_map(const Complex<S>& l);

// L (x)_A Hom_B(L, B) -> B, x (x) f -> f(x)
template <class S>
ChainMap<S> counit_map(const Complex<S>& l);

// Hom_B(L, B) (x)_B L -> Hom_B(L, L), f (x) x -> (y -> f(y) x), up to the sign
// (-1)^{p(q+1)} on the block Hom(L_p, B) (x) L_q.
template <class S>
ChainMap<S> dual_evaluation(const Complex<S>& l);

template <class S>
Complex<S> unit_cone(const Complex<S>& x, int cutoff, std::uint64_t seed = 0);

template <class S>
Complex<S> counit_cone(const Complex<S>& x, int cutoff, std::uint64_t seed = 0);

template <class S>
Perfection perf_env_direct(const Complex<S>& c, int cutoff, std::uint64_t seed = 0);

// C (x)^L_A N perfect over A for every simple N. C (x)^L_A - is computed on a
// truncation of C whose top term is right-projective; when no such truncation
// is found within the cutoff the verdict is NotPerfectWithinCutoff without a
// certificate.
template <class S>
struct SimplesVerdict {
  Perfection overall;
  bool truncated = false;
  int s = 0;
  std::vector<Perfection> per_simple;
};

template <class S>
SimplesVerdict<S> perf_env_simples_detail(const Complex<S>& c, int cutoff, std::uint64_t seed = 0);

template <class S>
Perfection perf_env_simples(const Complex<S>& c, int cutoff, std::uint64_t seed = 0) {
  return perf_env_simples_detail<S>(c, cutoff, seed).overall;
}

enum class EnvMode { Direct, Simples, Gorenstein };

const char* to_string(EnvMode m);

template <class S>
Report singular_equivalence_check(const Complex<S>& x, int cutoff, EnvMode mode = EnvMode::Simples,
                                  std::uint64_t seed = 0);

// B as a B-A and as an A-B bimodule through f : A -> B
template <class S>
Bimod<S> target_as_bimodule(const AlgebraHom<S>& f, bool target_on_left);

template <class S>
Report hom_singular_check(const AlgebraHom<S>& f, int cutoff, std::uint64_t seed = 0);

// ideal given by a basis of columns in A
template <class S>
Report idempotent_ideal_check(const AlgebraPtr<S>& a, const Mat<S>& ideal, int cutoff, std::uint64_t seed = 0);

template <class S>
struct IdempotentData {
  CornerData<S> corner;
  Bimod<S> lam_e;  // Lambda e as a Lambda-eLambda e bimodule
  Bimod<S> e_lam;  // e Lambda as an eLambda e-Lambda bimodule
  Module<S> quotient;  // Lambda / Lambda e Lambda over Lambda^e
  ProjDim pd_lam_e_right;
  ProjDim pd_e_lam_left;
  ProjDim pd_quotient;
  bool lam_e_right_projective = false;
  bool e_lam_left_projective = false;
};

template <class S>
IdempotentData<S> idempotent_data(const AlgebraPtr<S>& lam, const Vec<S>& e, int cutoff, std::uint64_t seed = 0);

template <class S>
Report idempotent_singular_check(const AlgebraPtr<S>& lam, const Vec<S>& e, int cutoff, std::uint64_t seed = 0);

}  // namespace singeq
