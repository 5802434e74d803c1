#pragma once

#include <stdexcept>
#include <string>

namespace missmass {

// Malformed or invalid input (bad probabilities, n = 0, unparsable files).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A well-formed request outside the validity range of a bound,
// e.g. evaluating the baseline at t >= n.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace missmass
