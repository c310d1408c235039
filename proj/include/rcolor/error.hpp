#pragma once

#include <stdexcept>

namespace rcolor {

/// Operands or arguments that violate an operation's precondition
/// (modulus or offset mismatch, non-invertible constant term, ...).
class SeriesError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation needs coefficients beyond what is stored, or beyond a
/// configured scan ceiling.
class TruncationError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace rcolor
