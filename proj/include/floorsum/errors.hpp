#pragma once

#include <stdexcept>
#include <string>

namespace floorsum {

// Input outside an operation's mathematical domain (x = 0, D <= 100, k < 2, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured compute or memory budget would be exceeded.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input (exponent-pair words, affine forms, rationals).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace floorsum
