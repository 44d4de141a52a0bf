#pragma once

#include <stdexcept>
#include <string>

namespace relind {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input files: bad headers, dimension mismatches, non-finite
// values, unparseable rows. Messages name the file and line where possible.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed inputs that cannot support the requested computation:
// out-of-vocabulary words, too few pairs, empty classes, zero-norm vectors.
class DataError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration: contradictory flags, unknown enum names,
// out-of-range parameters caught before any work starts.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace relind
