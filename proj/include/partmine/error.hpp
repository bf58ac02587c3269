#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace partmine {

enum class ErrorCode {
  kIo,
  kParse,
  kInvalidArgument,
  kEmptySegment,
  kEmptyDataset,
  kConfigMismatch,
  kSampleTooLarge,
  kEmptyTree,
  kLeafWithoutData,
  kEmptyUniverse,
  kOutOfWindowEvent,
};

const char* to_string(ErrorCode code);

// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorCode::kParse, "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  // 1-based line number of the offending input.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace partmine
