#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hurst {

enum class ErrorKind {
  invalid_argument,
  insufficient_levels,
  degenerate_input,
  parse_error,
  empty_input,
  io_error,
  internal_consistency,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::insufficient_levels: return "insufficient-levels";
    case ErrorKind::degenerate_input: return "degenerate-input";
    case ErrorKind::parse_error: return "input-parse";
    case ErrorKind::empty_input: return "empty-input";
    case ErrorKind::io_error: return "unreadable-input";
    case ErrorKind::internal_consistency: return "internal";
  }
  return "unknown";
}

// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, const std::string& what,
                    ErrorKind kind = ErrorKind::invalid_argument) {
  if (!condition) fail(kind, what);
}

}  // namespace hurst
