#include "singeq/witness.hpp"

#include <algorithm>

#include "instantiate.hpp"

namespace singeq {

const char* to_string(IdempotentRoute r) { return r == IdempotentRoute::First ? "first" : "second"; }

template <class S>
Bimod<S> bimod_syzygy(const Bimod<S>& b, int n) {
  return {syzygy<S>(b.module, n), b.left, b.right};
}

namespace {

template <class S>
std::string dims_detail(const Module<S>& x, const Module<S>& y) {
  return "dims " + std::to_string(x.dim()) + " and " + std::to_string(y.dim());
}

template <class S>
Check projective_check(const Bimod<S>& b, const std::string& name) {
  const bool l = is_projective<S>(restrict_side<S>(b, Side::Left));
  const bool r = is_projective<S>(restrict_side<S>(b, Side::Right));
  std::string detail;
  if (!l) detail = "not projective on the left";
  if (!r) detail += std::string(detail.empty() ? "" : ", ") + "not projective on the right";
  return {name, l && r ? Verdict::Pass : Verdict::Fail, detail};
}

template <class S>
Witness<S> idempotent_pair(const IdempotentData<S>& d, const AlgebraPtr<S>& lam, IdempotentRoute route, int l) {
  Witness<S> w{d.corner.algebra, lam, d.lam_e, d.e_lam, l};
  if (route == IdempotentRoute::First)
    w.m = bimod_syzygy<S>(d.lam_e, l);
  else
    w.n = bimod_syzygy<S>(d.e_lam, l);
  return w;
}

}  // namespace

template <class S>
Report verify_witness(const Witness<S>& w, std::uint64_t seed, int cutoff) {
  if (w.m.left != w.b || w.m.right != w.a || w.n.left != w.a || w.n.right != w.b)
    throw TagMismatch("witness bimodules do not match the algebras");
  Report rep;
  rep.subject = "witness";
  rep.level = w.level;
  rep.cutoff = cutoff;
  rep.seed = seed;
  rep.checks.push_back(projective_check<S>(w.m, "(i) M projective over B and over A^op"));
  rep.checks.push_back(projective_check<S>(w.n, "(ii) N projective over A and over B^op"));
  auto nm = tensor_over<S>(w.n, w.m).result.module;
  auto oa = syzygy<S>(regular_bimodule<S>(w.a), w.level);
  rep.add("(iii) N (x)_B M = Omega^l(A) stably", from_tri(stable_iso<S>(nm, oa, seed)), dims_detail<S>(nm, oa));
  auto mn = tensor_over<S>(w.m, w.n).result.module;
  auto ob = syzygy<S>(regular_bimodule<S>(w.b), w.level);
  rep.add("(iv) M (x)_A N = Omega^l(B) stably", from_tri(stable_iso<S>(mn, ob, seed ^ 0x9e3779b97f4a7c15ULL)),
          dims_detail<S>(mn, ob));
  rep.verdict = rep.conjunction();
  return rep;
}

template <class S>
BuiltWitness<S> build_witness(const Complex<S>& x, int cutoff, std::uint64_t seed, const BuildOptions& opt) {
  if (!x.left() || !x.right()) throw TagMismatch("build_witness: needs a complex of bimodules");
  if (!opt.override_check) {
    auto chk = singular_equivalence_check<S>(x, cutoff, EnvMode::Simples, seed);
    if (chk.verdict == Verdict::Fail)
      for (const auto& c : chk.checks)
        if (c.verdict == Verdict::Fail) throw HypothesisFailed("build_witness: " + c.name + " fails: " + c.detail);
  }
  const bool forced = opt.s || opt.s_prime;
  std::optional<int> s = opt.s, sp = opt.s_prime;
  int first_s = 0;
  for (int attempt = 0;; ++attempt) {
    auto l = truncate_per_fact<S>(x, cutoff, s, seed);
    auto xv = hom_complex_regular<S>(l.complex).complex;
    auto w = truncate_per_fact<S>(xv, cutoff, sp, seed);
    if (attempt == 0) first_s = l.s;
    BuiltWitness<S> out;
    out.s = l.s;
    out.s_prime = w.s;
    out.witness = {x.right(), x.left(), l.complex.bimod(l.s), w.complex.bimod(w.s), l.s + w.s};
    out.report = verify_witness<S>(out.witness, seed, cutoff);
    out.report.subject = "built witness (s = " + std::to_string(l.s) + ", s' = " + std::to_string(w.s) + ")";
    if (forced || out.report.verdict == Verdict::Pass) return out;
    if (attempt + 1 > cutoff)
      throw ConstructionExhausted("build_witness: no verified witness for s in [" + std::to_string(first_s) + ", " +
                                  std::to_string(l.s) + "]");
    s = l.s + 1;
    sp = w.s + 1;
  }
}

template <class S>
IdempotentWitness<S> idempotent_witness(const AlgebraPtr<S>& lam, const Vec<S>& e, int cutoff, std::uint64_t seed,
                                        std::optional<IdempotentRoute> route) {
  IdempotentWitness<S> out;
  out.data = idempotent_data<S>(lam, e, cutoff, seed);
  const auto& d = out.data;
  if (!d.pd_quotient.finite())
    throw HypothesisFailed("idempotent_witness: pd of Lambda/Lambda e Lambda over Lambda^e is " + d.pd_quotient.describe());
  const bool first = d.pd_lam_e_right.finite() && d.e_lam_left_projective;
  const bool second = d.pd_e_lam_left.finite() && d.lam_e_right_projective;
  if (route == IdempotentRoute::First && !first)
    throw HypothesisFailed("idempotent_witness: condition (i) fails");
  if (route == IdempotentRoute::Second && !second)
    throw HypothesisFailed("idempotent_witness: condition (ii) fails");
  if (!first && !second) throw HypothesisFailed("idempotent_witness: neither condition (i) nor (ii) holds");
  out.route = route ? *route : (first ? IdempotentRoute::First : IdempotentRoute::Second);
  const int side_pd = out.route == IdempotentRoute::First ? d.pd_lam_e_right.level() : d.pd_e_lam_left.level();
  const int l = std::max(side_pd, d.pd_quotient.level());
  out.built.witness = idempotent_pair<S>(d, lam, out.route, l);
  out.built.report = verify_witness<S>(out.built.witness, seed, cutoff);
  out.built.report.subject = std::string("idempotent witness (route ") + to_string(out.route) + ")";
  return out;
}

template <class S>
MoritaWitness<S> morita_witness(const AlgebraPtr<S>& a, const AlgebraPtr<S>& b, const Module<S>& m,
                                const Module<S>& n, MoritaCorner corner, int cutoff, std::uint64_t seed) {
  const Index dim = a->dim() * b->dim();
  std::vector<Mat<S>> ma, na;
  for (Index i = 0; i < dim; ++i) {
    ma.push_back(m.dim() ? m.action(i) : Mat<S>(0, 0));
    na.push_back(n.dim() ? n.action(i) : Mat<S>(0, 0));
  }
  MoritaWitness<S> out;
  out.ring = morita_ring<S>(a, b, ma, na);
  const bool top = corner == MoritaCorner::TopLeft;
  auto e = morita_idempotent<S>(out.ring, top);
  out.idem = idempotent_witness<S>(out.ring, e, cutoff, seed, top ? IdempotentRoute::First : IdempotentRoute::Second);

  Bimod<S> mb{m, b, a};
  ProjDim side = projective_dimension<S>(restrict_side<S>(mb, top ? Side::Right : Side::Left), cutoff, seed);
  ProjDim reg = projective_dimension<S>(regular_bimodule<S>(top ? b : a), cutoff, seed);
  if (side.finite() && reg.finite()) {
    out.formula_level = std::max(side.level(), reg.level());
    auto w = idempotent_pair<S>(out.idem.data, out.ring, out.idem.route, *out.formula_level);
    out.formula_report = verify_witness<S>(w, seed, cutoff);
    out.formula_report->subject = "Morita formula level";
  }
  return out;
}

template <class S>
BuiltWitness<S> corollary_witness(const AlgebraPtr<S>& a, const AlgebraPtr<S>& b, const Bimod<S>& m, int cutoff,
                                  std::uint64_t seed) {
  if (m.left != b || m.right != a) throw TagMismatch("corollary_witness: M must be a B-A bimodule");
  auto va = vdim<S>(a, cutoff), vb = vdim<S>(b, cutoff);
  if (!va || !vb) throw HypothesisFailed("corollary_witness: algebras must be Gorenstein within the cutoff");
  if (!projective_both_sides<S>(m)) throw HypothesisFailed("corollary_witness: M must be projective on both sides");
  auto chk = singular_equivalence_check<S>(stalk<S>(m.module), cutoff, EnvMode::Gorenstein, seed);
  if (chk.verdict != Verdict::Pass)
    for (const auto& c : chk.checks)
      if (c.verdict != Verdict::Pass)
        throw HypothesisFailed("corollary_witness: " + c.name + " is " + to_string(c.verdict) + ": " + c.detail);

  const int l = 2 * std::max(*va, *vb);
  BuiltWitness<S> out;
  out.witness = {a, b, m, bimod_syzygy<S>(hom_into_regular<S>(m).result, l), l};
  out.report = verify_witness<S>(out.witness, seed, cutoff);
  out.report.subject = "corollary witness";

  for (const auto& [alg, v, name] : {std::tuple{a, *va, "A"}, std::tuple{b, *vb, "B"}}) {
    auto ve = vdim<S>(enveloping<S>(alg), cutoff);
    const std::string cname = std::string("vdim(") + name + "^e) <= 2 vdim(" + name + ")";
    if (!ve)
      out.report.add(cname, Verdict::Unresolved, "enveloping algebra not Gorenstein within cutoff");
    else
      out.report.add(cname, *ve <= 2 * v ? Verdict::Pass : Verdict::Fail,
                     std::to_string(*ve) + " vs " + std::to_string(2 * v));
  }

  // M (x)_A - on MCM samples: the regular module and every MCM simple
  bool keeps = true;
  std::vector<Module<S>> samples = {regular_module<S>(a)};
  for (Index v = 0; v < a->num_vertices(); ++v) samples.push_back(simple_module<S>(a, v));
  int tried = 0;
  for (const auto& x : samples) {
    if (!is_mcm<S>(x, cutoff)) continue;
    ++tried;
    keeps = keeps && is_mcm<S>(tensor_over<S>(m, as_left<S>(x)).result.module, cutoff);
  }
  out.report.add("M (x)_A - keeps MCM samples MCM", keeps ? Verdict::Pass : Verdict::Fail,
                 std::to_string(tried) + " samples");
  out.report.verdict = out.report.conjunction();
  return out;
}

template <class S>
Tri downstream_check(const Witness<S>& w, const Module<S>& x, std::uint64_t seed) {
  if (x.algebra() != w.a) throw TagMismatch("downstream_check: module must be over A");
  auto mx = tensor_over<S>(w.m, as_left<S>(x)).result;
  auto nmx = tensor_over<S>(w.n, mx).result.module;
  return stable_iso<S>(nmx, syzygy<S>(x, w.level), seed);
}

#define SINGEQ_WITNESS(S)                                                                                           \
  template Bimod<S> bimod_syzygy<S>(const Bimod<S>&, int);                                                          \
  template Report verify_witness<S>(const Witness<S>&, std::uint64_t, int);                                         \
  template BuiltWitness<S> build_witness<S>(const Complex<S>&, int, std::uint64_t, const BuildOptions&);            \
  template IdempotentWitness<S> idempotent_witness<S>(const AlgebraPtr<S>&, const Vec<S>&, int, std::uint64_t,      \
                                                      std::optional<IdempotentRoute>);                              \
  template MoritaWitness<S> morita_witness<S>(const AlgebraPtr<S>&, const AlgebraPtr<S>&, const Module<S>&,         \
                                              const Module<S>&, MoritaCorner, int, std::uint64_t);                  \
  template BuiltWitness<S> corollary_witness<S>(const AlgebraPtr<S>&, const AlgebraPtr<S>&, const Bimod<S>&, int,   \
                                                std::uint64_t);                                                     \
  template Tri downstream_check<S>(const Witness<S>&, const Module<S>&, std::uint64_t);

SINGEQ_FOR_EACH_SCALAR(SINGEQ_WITNESS)

}  // namespace singeq
