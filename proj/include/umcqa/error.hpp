#pragma once

#include <stdexcept>
#include <string>

namespace umcqa {

// Runtime failure: malformed input files, degenerate numerics, missing data.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration or command-line usage.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace umcqa
