#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "singeq/complex.hpp"

namespace singeq {

enum class Verdict { Pass, Fail, Unresolved };

const char* to_string(Verdict v);

struct Check {
  std::string name;
  Verdict verdict = Verdict::Unresolved;
  std::string detail;
};

struct Report {
  std::string subject;
  std::vector<Check> checks;
  Verdict verdict = Verdict::Unresolved;
  std::optional<int> level;
  int cutoff = 0;
  std::uint64_t seed = 0;

  Check& add(std::string name, Verdict v, std::string detail = {});
  const Check* find(const std::string& name) const;
  // Fail if any check fails, else Unresolved if any is, else Pass
  Verdict conjunction() const;
};

Verdict from_tri(Tri t);

// certified infinite counts as Fail; exhaustion without certificate is Unresolved
Verdict from_perfection(const Perfection& p);

std::string describe(const Perfection& p);

}  // namespace singeq
