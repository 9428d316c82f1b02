#pragma once

#include <stdexcept>
#include <string>

namespace tide {

// Exit-code contract for the CLI: 0 success, 2 input/format problems,
// 3 broken invariants detected in otherwise well-formed input.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
  virtual int exit_code() const { return 3; }
};

// Malformed or missing input: unreadable files, bad CSV/CoNLL-U/JSONL
// syntax, unusable command-line or config values.
class FormatError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 2; }
};

// Well-formed input that violates a cross-record invariant (dangling
// references, unknown enum values, mismatched ids).
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// A caller broke an API precondition (overlapping spans, length mismatch).
class ContractError : public Error {
 public:
  using Error::Error;
};

// A metric has no defined value on this input. Callers that can report
// partial results catch this instead of propagating it.
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

}  // namespace tide
