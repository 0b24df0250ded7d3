/*
 * Copyright (c) 2026 the vivolink authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef VIVOLINK_ERRORS_HPP
#define VIVOLINK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vivolink {

/// Malformed input file (Touchstone, config). Carries a 1-based line number
/// when the offending line is known, 0 otherwise.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Requested frequency outside the data a network was sampled on.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Zero-forcing over a rank-deficient channel matrix.
class SingularChannelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vivolink

#endif  // VIVOLINK_ERRORS_HPP
