#pragma once

#include <stdexcept>
#include <string>

namespace divsub {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: mismatched groups, paths that are not paths, invalid minors.
class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string& what) : Error("structural error: " + what) {}
};

// Malformed textual input (group specs, JSON documents).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

// A configured cap or a supernode budget was exhausted.
class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what) : Error("resource error: " + what) {}
};

// Input outside the supported regime (e.g. fewer than four supernodes).
class UnsupportedError : public Error {
 public:
  explicit UnsupportedError(const std::string& what) : Error("unsupported: " + what) {}
};

// Argument outside the operation's domain (e.g. realizing an element not in S).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error("domain error: " + what) {}
};

// A cycle cap tripped before a construction could reach a verdict.
class IndeterminateError : public Error {
 public:
  explicit IndeterminateError(const std::string& what) : Error("indeterminate: " + what) {}
};

// An invariant that the underlying mathematics guarantees did not hold.
// Always indicates a bug; never caught inside the library.
class SoundnessError : public Error {
 public:
  explicit SoundnessError(const std::string& what) : Error("soundness violation: " + what) {}
};

}  // namespace divsub
