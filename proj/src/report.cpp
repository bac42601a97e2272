#include "singeq/report.hpp"

namespace singeq {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Unresolved: return "unresolved";
  }
  return "?";
}

Check& Report::add(std::string name, Verdict v, std::string detail) {
  checks.push_back({std::move(name), v, std::move(detail)});
  return checks.back();
}

const Check* Report::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

Verdict Report::conjunction() const {
  bool open = false;
  for (const auto& c : checks) {
    if (c.verdict == Verdict::Fail) return Verdict::Fail;
    open = open || c.verdict == Verdict::Unresolved;
  }
  return open ? Verdict::Unresolved : Verdict::Pass;
}

Verdict from_tri(Tri t) {
  return t == Tri::True ? Verdict::Pass : t == Tri::False ? Verdict::Fail : Verdict::Unresolved;
}

Verdict from_perfection(const Perfection& p) {
  if (p.perfect()) return Verdict::Pass;
  return p.certified_infinite() ? Verdict::Fail : Verdict::Unresolved;
}

std::string describe(const Perfection& p) {
  if (p.perfect()) return p.zero ? "perfect (acyclic)" : "perfect, top degree " + std::to_string(p.bound);
  std::string s = "not perfect within cutoff " + std::to_string(p.cutoff);
  if (p.periodic)
    s += "; tail syzygies " + std::to_string(p.periodic->first) + " and " + std::to_string(p.periodic->second) +
         " isomorphic";
  return s;
}

}  // namespace singeq
