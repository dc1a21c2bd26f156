#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace aloop {

enum class ErrorCode {
  kInvalidArgument,
  kParse,
  kSingular,
  kNonDivisor,
  kJacobi,
  kUnsupportedParams,
  kW1Violation,
  kLoopAxiom,
  kNotASubloop,
  kSizeLimit,
  kPhiCondition,
  kNonCommutingBeta,
  kSingularIdPlusBeta,
  kNotInjective,
  kUnitInImage,
  kBadSubfield,
  kXSquareNonzero,
  kDegenerateX,
  kMismatch,
  kBudgetExceeded,
  kDimTooLarge,
  kInternal,
};

const char* error_code_name(ErrorCode code);

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class JacobiError : public Error {
 public:
  JacobiError(std::size_t i, std::size_t j, std::size_t k, const std::string& what)
      : Error(ErrorCode::kJacobi, what), triple_{i, j, k} {}
  const std::array<std::size_t, 3>& triple() const noexcept { return triple_; }

 private:
  std::array<std::size_t, 3> triple_;
};

class W1Violation : public Error {
 public:
  W1Violation(std::uint64_t x, const std::string& what)
      : Error(ErrorCode::kW1Violation, what), x_(x) {}
  // Element (bit-encoded) whose id + ad_x is singular.
  std::uint64_t element() const noexcept { return x_; }

 private:
  std::uint64_t x_;
};

class LoopAxiomError : public Error {
 public:
  enum class Where { kRow, kColumn, kIdentity, kRange };
  LoopAxiomError(Where where, std::size_t index, const std::string& what)
      : Error(ErrorCode::kLoopAxiom, what), where_(where), index_(index) {}
  Where where() const noexcept { return where_; }
  std::size_t index() const noexcept { return index_; }

 private:
  Where where_;
  std::size_t index_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& context, const std::string& what)
      : Error(ErrorCode::kParse, context + ": " + what), context_(context) {}
  const std::string& context() const noexcept { return context_; }

 private:
  std::string context_;
};

}  // namespace aloop
