#pragma once

#include <stdexcept>
#include <string>

namespace dbpim {

// Error taxonomy shared by the library and the CLI. The CLI maps each class
// to a distinct process exit code (see tools/dbpim_main.cpp and README).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input files (bad JSON, wrong type tag, bad field domain).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Structurally inconsistent data (dimension mismatches, out-of-range tensor
// elements, chained layers whose shapes do not line up).
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A modeled hardware buffer or the macro array cannot hold the workload.
// Messages name the limit that was exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Invalid argument to a library call (bad threshold, bad config field,
// mode-inconsistent compiled image).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Scalar value outside its representable domain.
class RangeError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

}  // namespace dbpim
