#include "singeq/gorenstein.hpp"

#include <map>
#include <mutex>

#include "instantiate.hpp"

namespace singeq {

template <class S>
ProjDim inj_dim(const Module<S>& m, int cutoff, std::uint64_t seed) {
  return projective_dimension<S>(dual<S>(as_left<S>(m)).module, cutoff, seed);
}

namespace {

template <class S>
struct VdimCache {
  std::mutex mu;
  std::map<std::pair<const Algebra<S>*, int>, std::pair<std::weak_ptr<const Algebra<S>>, std::optional<int>>> slots;
  static VdimCache& get() {
    static VdimCache c;
    return c;
  }
};

}  // namespace

template <class S>
std::optional<int> vdim(const AlgebraPtr<S>& a, int cutoff) {
  auto& cache = VdimCache<S>::get();
  const auto key = std::make_pair(a.get(), cutoff);
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.slots.find(key);
    if (it != cache.slots.end() && it->second.first.lock() == a) return it->second.second;
  }
  ProjDim left = inj_dim<S>(regular_module<S>(a), cutoff);
  ProjDim right = inj_dim<S>(regular_module<S>(opposite<S>(a)), cutoff);
  std::optional<int> out;
  if (left.finite() && right.finite()) {
    if (left.level() != right.level())
      throw ZaksViolated("injective dimensions " + std::to_string(left.level()) + " and " +
                         std::to_string(right.level()) + " differ");
    out = left.level();
  }
  std::lock_guard<std::mutex> lock(cache.mu);
  cache.slots[key] = {a, out};
  return out;
}

template <class S>
bool is_mcm(const Module<S>& m, int cutoff) {
  auto v = vdim<S>(m.algebra(), cutoff);
  if (!v) throw HypothesisFailed("is_mcm: algebra is not Gorenstein within cutoff " + std::to_string(cutoff));
  auto reg = regular_module<S>(m.algebra());
  for (int i = 1; i <= *v; ++i)
    if (ext_dim<S>(m, reg, i) != 0) return false;
  return true;
}

template <class S>
bool projective_both_sides(const Bimod<S>& b) {
  return is_projective<S>(restrict_side<S>(b, Side::Left)) && is_projective<S>(restrict_side<S>(b, Side::Right));
}

template <class S>
Tri mcm_bimodule_check(const Bimod<S>& m, const Bimod<S>& n, int cutoff) {
  if (!projective_both_sides<S>(m) || !projective_both_sides<S>(n))
    throw HypothesisFailed("mcm_bimodule_check: bimodules must be projective on both sides");
  auto nm = tensor_over<S>(n, m).result.module;
  auto mn = tensor_over<S>(m, n).result.module;
  if (!is_gorenstein<S>(nm.algebra(), cutoff) || !is_gorenstein<S>(mn.algebra(), cutoff)) return Tri::Unknown;
  return (is_mcm<S>(nm, cutoff) && is_mcm<S>(mn, cutoff)) ? Tri::True : Tri::False;
}

#define SINGEQ_GORENSTEIN(S)                                                    \
  template ProjDim inj_dim<S>(const Module<S>&, int, std::uint64_t);            \
  template std::optional<int> vdim<S>(const AlgebraPtr<S>&, int);               \
  template bool is_mcm<S>(const Module<S>&, int);                               \
  template bool projective_both_sides<S>(const Bimod<S>&);                      \
  template Tri mcm_bimodule_check<S>(const Bimod<S>&, const Bimod<S>&, int);

SINGEQ_FOR_EACH_SCALAR(SINGEQ_GORENSTEIN)

}  // namespace singeq
