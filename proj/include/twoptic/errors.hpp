#pragma once

#include <stdexcept>
#include <string>

#include "twoptic/object.hpp"

namespace twoptic {

/// Raised when two boundary objects that must agree do not.
class TypeError : public std::runtime_error {
public:
  TypeError(std::string where, Object expected, Object actual);

  const std::string& where() const noexcept { return where_; }
  const Object& expected() const noexcept { return expected_; }
  const Object& actual() const noexcept { return actual_; }

private:
  std::string where_;
  Object expected_;
  Object actual_;
};

/// A runtime value does not belong to the carrier it was supplied for.
class CarrierError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Exhaustive checks need every sort to be finite and the input space bounded.
class UnsupportedInterpretation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
  ParseError(std::string message, std::string location)
      : std::runtime_error(location.empty() ? message : location + ": " + message),
        location_(std::move(location)) {}

  const std::string& location() const noexcept { return location_; }

private:
  std::string location_;
};

} // namespace twoptic
