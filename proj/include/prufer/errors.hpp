#pragma once

#include <stdexcept>
#include <string>

namespace prufer {

// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// The given edge list is not a tree on {1..n} (wrong edge count, cycle,
// disconnected, label out of range, self-loop, or duplicate edge).
class NotATreeError : public Error {
 public:
  using Error::Error;
};

// Two trees passed to a binary operation have different vertex counts.
class SizeMismatchError : public Error {
 public:
  using Error::Error;
};

// Prufer strings need n >= 3.
class TooSmallError : public Error {
 public:
  using Error::Error;
};

// The two strings of a mutation pair do not differ in exactly one
// coordinate, or differ at a coordinate other than the declared one.
class InvalidPairError : public Error {
 public:
  using Error::Error;
};

// Step classification was requested on a merged state.
class StateMergedError : public Error {
 public:
  using Error::Error;
};

// Exhaustive enumeration was requested above the configured cap.
class TooLargeError : public Error {
 public:
  using Error::Error;
};

// Malformed textual input (tree lines, P-string lines).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace prufer
