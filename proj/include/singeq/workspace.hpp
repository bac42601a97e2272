#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "singeq/report.hpp"

namespace singeq {

// One line of a workspace after lexing: the leading keyword and the remaining
// tokens in normal form (powers expanded, scalars reduced). Positions are kept
// for error messages and ignored by ==.
struct Line {
  std::string keyword;
  std::vector<std::string> args;
  int line = 0;
  std::vector<int> cols;

  bool operator==(const Line& o) const { return keyword == o.keyword && args == o.args; }
};

struct Statement {
  Line head;
  std::vector<Line> body;

  bool operator==(const Statement&) const = default;
};

struct TaskSpec {
  int index = 0;  // 1-based, in file order
  std::string kind;
  std::vector<std::string> args;
  std::optional<std::uint64_t> seed;
  std::optional<int> cutoff;
  std::optional<std::string> as;
  int line = 0;
  std::vector<int> deps;  // indices of tasks whose AS results this one reads
};

namespace detail {
struct Evaluated;
}

class Workspace {
 public:
  const FieldSpec& field() const { return field_; }
  const std::vector<Statement>& statements() const { return statements_; }
  const std::vector<TaskSpec>& tasks() const { return tasks_; }
  // declared FIELD (or the default) before any override
  const FieldSpec& declared_field() const { return declared_; }

  // same statements evaluated over another field
  Workspace with_field(const FieldSpec& f) const;

  bool operator==(const Workspace& o) const { return declared_ == o.declared_ && statements_ == o.statements_; }

  const detail::Evaluated& evaluated() const { return *env_; }

 private:
  friend Workspace build_workspace(std::vector<Statement>, FieldSpec, std::optional<FieldSpec>);
  FieldSpec field_;
  FieldSpec declared_;
  std::vector<Statement> statements_;
  std::vector<TaskSpec> tasks_;
  std::shared_ptr<const detail::Evaluated> env_;
};

// Throws ParseError (syntax, unknown or forward names) and ValidationError
// (an object fails its invariants; the message names the violated check).
Workspace parse_workspace(std::string_view text, std::optional<FieldSpec> field_override = std::nullopt);

std::string serialize(const Workspace& w);

// declared objects in file order; dim is the vector-space dimension (the
// total over all terms for complexes, the level for witnesses)
struct Declared {
  std::string name;
  std::string kind;
  long dim = 0;
};

std::vector<Declared> declarations(const Workspace& w);

// "prime 7", "p=7", "7" or "rational"
FieldSpec parse_field(std::string_view text);

enum class Status { Pass, Fail, Unresolved, Error };

const char* to_string(Status s);

struct RunOptions {
  std::optional<int> cutoff;  // used when the task sets none
  std::optional<std::uint64_t> seed;
  bool parallel = false;
  bool timing = false;
};

struct TaskReport {
  int index = 0;
  std::string kind;
  std::vector<std::string> args;
  std::optional<std::string> as;
  std::string verdict;
  Status status = Status::Unresolved;
  std::optional<int> level;
  int cutoff = 50;
  std::uint64_t seed = 0;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
  std::vector<Check> checks;
  std::string error;
  std::optional<double> seconds;

  nlohmann::ordered_json json() const;
  std::string text() const;
};

// `task` is a 1-based index or an AS name. Tasks it depends on are run first
// and not reported. UnknownTask if nothing matches.
TaskReport run_task(const Workspace& w, const std::string& task, const RunOptions& opt = {});

std::vector<TaskReport> run_all(const Workspace& w, const RunOptions& opt = {});

std::string reports_json(const Workspace& w, const std::vector<TaskReport>& reports);

// 3 if any task errored, else 1 if any failed, else 2 if any is unresolved, else 0
int exit_code(const std::vector<TaskReport>& reports);

}  // namespace singeq
