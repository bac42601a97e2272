#pragma once

#include <optional>

#include "singeq/bimodule.hpp"

namespace singeq {

// pd of D(m) over the opposite algebra
template <class S>
ProjDim inj_dim(const Module<S>& m, int cutoff, std::uint64_t seed = 0);

// Common injective dimension of A on both sides. nullopt when either side
// exceeds the cutoff; throws ZaksViolated if both are finite and differ.
// Results are cached per algebra and cutoff.
template <class S>
std::optional<int> vdim(const AlgebraPtr<S>& a, int cutoff);

template <class S>
bool is_gorenstein(const AlgebraPtr<S>& a, int cutoff) {
  return vdim<S>(a, cutoff).has_value();
}

// Ext^i(m, A) = 0 for 1 <= i <= vdim(A); HypothesisFailed if A is not
// Gorenstein within the cutoff
template <class S>
bool is_mcm(const Module<S>& m, int cutoff);

// N (x)_B M over A^e and M (x)_A N over B^e are MCM. M is a B-A bimodule, N an
// A-B bimodule, both projective on each side (HypothesisFailed otherwise).
// Unknown when an enveloping algebra is not Gorenstein within the cutoff.
template <class S>
Tri mcm_bimodule_check(const Bimod<S>& m, const Bimod<S>& n, int cutoff);

template <class S>
bool projective_both_sides(const Bimod<S>& b);

}  // namespace singeq
