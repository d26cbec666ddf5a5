#pragma once

#include <stdexcept>

namespace prp {

// Precondition or input-shape violation (CLI exit status 2).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A configured cap was exceeded (CLI exit status 3).
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A self-check failed; indicates a bug (CLI exit status 4).
struct InvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace prp
