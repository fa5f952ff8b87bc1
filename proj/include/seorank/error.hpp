#pragma once

#include <stdexcept>
#include <string>

namespace seorank {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller passed an argument outside the documented domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Malformed input bytes (CSV, JSON fixtures, config files).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// File or stream could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// An analysis step cannot produce a value for the given data
/// (too few pairs, zero variance, non-positive log argument, ...).
class AnalysisError : public Error {
 public:
  using Error::Error;
};

}  // namespace seorank
