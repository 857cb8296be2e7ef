#pragma once

#include <stdexcept>
#include <string>

namespace knotslope {

enum class ErrorCode {
  kParse,
  kInvalidPresentation,
  kInvariantViolation,
  kNotCommuting,
  kDegenerate,
  kNotAdmissible,
  kBoundaryParabolic,
  kSingularPoint,
  kZeroResultant,
  kUsage,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(ErrorCode::kParse, format(what, line, column)),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, int line, int column) {
    return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  }

  int line_;
  int column_;
};

}  // namespace knotslope
