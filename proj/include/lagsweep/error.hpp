#pragma once

#include <stdexcept>
#include <string>

namespace lagsweep {

// Malformed arguments: dimension mismatches, out-of-range indices.
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The operation is well-formed but its mathematical precondition fails
// (frame on the critical set, even period, non-generic germ).
class precondition_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A point lies outside the domain of a geometric map (e.g. inside a curve).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

inline void require_dim(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw input_error(std::string(what) + ": expected dimension " + std::to_string(want) +
                      ", got " + std::to_string(got));
  }
}

}  // namespace detail
}  // namespace lagsweep
