#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pncalc {

/// Malformed or mismatched input: unknown identifiers, chart mismatches,
/// wrong degrees, syntax errors. Maps to CLI exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Syntax error in the polynomial grammar, with the 0-based offset of the
/// offending character.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A named tensor component that failed to vanish, printed in canonical form.
struct Residual {
  std::string name;
  std::string value;
  friend bool operator==(const Residual&, const Residual&) = default;
};

/// An operation refused to run because a mathematical precondition does not
/// hold (e.g. the concomitant of a pair violating sharp-compatibility). The
/// failing residuals are carried along. Maps to CLI exit code 1.
class PreconditionFailure : public std::runtime_error {
 public:
  PreconditionFailure(const std::string& what, std::vector<Residual> residuals)
      : std::runtime_error(what), residuals_(std::move(residuals)) {}
  const std::vector<Residual>& residuals() const { return residuals_; }

 private:
  std::vector<Residual> residuals_;
};

/// Two routes that must agree by theorem returned different verdicts. This
/// always means a bug in this library, never bad input.
class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace pncalc
