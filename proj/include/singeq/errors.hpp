#pragma once

#include <stdexcept>
#include <string>

namespace singeq {

class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define SINGEQ_ERROR(Name)                                           \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(#Name, what) {}   \
  };

SINGEQ_ERROR(ShapeMismatch)
SINGEQ_ERROR(FieldMismatch)
SINGEQ_ERROR(NotNilpotent)
SINGEQ_ERROR(InconsistentRelations)
SINGEQ_ERROR(NotIdempotent)
SINGEQ_ERROR(NotElementary)
SINGEQ_ERROR(RadicalNeedsLargerPrime)
SINGEQ_ERROR(AlgebraMismatch)
SINGEQ_ERROR(TagMismatch)
SINGEQ_ERROR(InvalidModule)
SINGEQ_ERROR(InvalidComplex)
SINGEQ_ERROR(HypothesisFailed)
SINGEQ_ERROR(ConstructionExhausted)
SINGEQ_ERROR(ZaksViolated)
SINGEQ_ERROR(ValidationError)
SINGEQ_ERROR(UnknownTask)

#undef SINGEQ_ERROR

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error("ParseError", std::to_string(line) + ":" + std::to_string(column) +
                                ": " + what),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace singeq
