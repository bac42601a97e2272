#pragma once

#include <optional>

#include "singeq/singular.hpp"

namespace singeq {

// M is a B-A bimodule, N an A-B bimodule.
template <class S>
struct Witness {
  AlgebraPtr<S> a;
  AlgebraPtr<S> b;
  Bimod<S> m;
  Bimod<S> n;
  int level = 0;
};

// Checks (i) M projective over B and A^op, (ii) N projective over A and B^op,
// (iii) N (x)_B M = Omega^l(A) in stmod(A^e), (iv) M (x)_A N = Omega^l(B) in
// stmod(B^e).
template <class S>
Report verify_witness(const Witness<S>& w, std::uint64_t seed = 0, int cutoff = 50);

template <class S>
struct BuiltWitness {
  Witness<S> witness;
  Report report;
  int s = 0;
  int s_prime = 0;
};

struct BuildOptions {
  std::optional<int> s;
  std::optional<int> s_prime;
  // skip the singular_equivalence_check gate
  bool override_check = false;
};

// M = top term of the truncation L of x, N = top term of the truncation of
// Hom_B(L, B) over A (x) B^op, level s + s'. Without forced indices both are
// raised together until verification passes; ConstructionExhausted once
// they pass the cutoff.
template <class S>
BuiltWitness<S> build_witness(const Complex<S>& x, int cutoff, std::uint64_t seed = 0, const BuildOptions& opt = {});

enum class IdempotentRoute { First, Second };

const char* to_string(IdempotentRoute r);

template <class S>
struct IdempotentWitness {
  BuiltWitness<S> built;
  IdempotentData<S> data;
  IdempotentRoute route = IdempotentRoute::First;
};

// Between B = Lambda and A = eLambda e. Route First: (Omega^l(Lambda e), eLambda)
// with l = max(pd Lambda e over (eLambda e)^op, pd Lambda/Lambda e Lambda);
// route Second: (Lambda e, Omega^l(eLambda)). HypothesisFailed when the
// chosen (or any) route's conditions fail.
template <class S>
IdempotentWitness<S> idempotent_witness(const AlgebraPtr<S>& lam, const Vec<S>& e, int cutoff, std::uint64_t seed = 0,
                                        std::optional<IdempotentRoute> route = std::nullopt);

enum class MoritaCorner { TopLeft, BottomRight };

template <class S>
struct MoritaWitness {
  IdempotentWitness<S> idem;
  AlgebraPtr<S> ring;
  // max(pd_{A^op} M, pd_{B^e} B) or its mirror, and the verification of the
  // pair built at that level
  std::optional<int> formula_level;
  std::optional<Report> formula_report;
};

// m_action: B-A bimodule over tensor(b, a^op); n_action: A-B bimodule
template <class S>
MoritaWitness<S> morita_witness(const AlgebraPtr<S>& a, const AlgebraPtr<S>& b, const Module<S>& m,
                                const Module<S>& n, MoritaCorner corner, int cutoff, std::uint64_t seed = 0);

// Gorenstein A and B, M a two-sided projective B-A bimodule. Level
// 2 max(vdim A, vdim B), N = Omega^l(Hom_B(M, B)).
template <class S>
BuiltWitness<S> corollary_witness(const AlgebraPtr<S>& a, const AlgebraPtr<S>& b, const Bimod<S>& m, int cutoff,
                                  std::uint64_t seed = 0);

// N (x)_B (M (x)_A x) against Omega^l(x) in stmod(A)
template <class S>
Tri downstream_check(const Witness<S>& w, const Module<S>& x, std::uint64_t seed = 0);

template <class S>
Bimod<S> bimod_syzygy(const Bimod<S>& b, int n);

}  // namespace singeq
