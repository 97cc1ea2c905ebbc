#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hcomm {

// Bad index, shape mismatch, unknown operation symbol, arity mismatch.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured size cap was exceeded. Never silently truncated.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A theorem check could not run because its hypotheses are not available
// (no Day terms, no Kiss term, unshared congruences, ...).
class HypothesisUnmet : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A verifier's precondition does not hold for the given input.
class PreconditionViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string const& where, std::string const& what)
      : std::runtime_error(where + ": " + what), where_(where) {}

  std::string const& where() const noexcept { return where_; }

 private:
  std::string where_;
};

// Checked integer power; throws ResourceError when the result exceeds limit.
std::size_t checked_pow(std::size_t base, std::size_t exponent,
                        std::size_t limit = static_cast<std::size_t>(-1));

}  // namespace hcomm
