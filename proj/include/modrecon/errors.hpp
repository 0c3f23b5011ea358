#ifndef MODRECON_ERRORS_HPP
#define MODRECON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace modrecon {

// Invalid scalar arguments (negative ranges, non-finite inputs, ...).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Mismatched vector/matrix dimensions.
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Out-of-bounds element access; message names the offending position.
struct IndexError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Malformed input files; message carries the byte offset where parsing failed.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace modrecon

#endif
