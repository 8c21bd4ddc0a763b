#pragma once

#include <stdexcept>
#include <string>

namespace grepair {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or argument values (CLI exit code 1).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Malformed oracle query: out-of-range vertex, bad neighbor index, or a
/// degenerate pair. Signals a bug in the caller and is never swallowed.
class QueryViolation : public Error {
 public:
  using Error::Error;
};

/// Operation applied to the wrong graph kind (directed vs undirected).
class WrongGraphKind : public Error {
 public:
  using Error::Error;
};

/// Graphs with mismatched size, edge budget, or kind in a binary operation.
class IncompatibleGraphs : public Error {
 public:
  using Error::Error;
};

/// Input exceeds the size limit of an exhaustive procedure.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// File could not be parsed; message carries the offending line number.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A generated or corrected object failed its verification step, or a
/// corruption certificate did not validate (CLI exit code 2).
class VerificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace grepair
