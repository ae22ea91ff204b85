#pragma once

#include <stdexcept>
#include <string>

namespace rover {

// Base class for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Byte outside the DriveCommand wire-code table.
class MalformedCommand : public Error {
 public:
  using Error::Error;
};

// Frame encode/decode failure. `kind` separates structural problems from
// CRC mismatches so callers can count the latter as channel loss.
class FrameError : public Error {
 public:
  enum class Kind { Framing, Integrity, Oversize };

  FrameError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// Scenario or trace text that is not syntactically valid.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Syntactically valid input that breaks an invariant. `field` names the
// offending field (e.g. "robot_start").
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace rover
