#pragma once

#include <stdexcept>
#include <string>

namespace brc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An evaluation point coincides with a root of the Bethe system.
struct PoleError : Error {
  using Error::Error;
};

/// A singular-solution operation was given a solution without the +-i/2 pair.
struct NotSingularError : Error {
  using Error::Error;
};

struct ResourceError : Error {
  using Error::Error;
};

struct PrecisionError : Error {
  using Error::Error;
};

struct ConvergenceError : Error {
  using Error::Error;
};

struct DecompositionError : Error {
  using Error::Error;
};

struct AssignmentError : Error {
  using Error::Error;
};

struct DegenerateDegreeError : Error {
  using Error::Error;
};

struct UsageError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

/// A persisted document no longer matches the hash recorded in its manifest.
struct IntegrityError : Error {
  using Error::Error;
};

}  // namespace brc
