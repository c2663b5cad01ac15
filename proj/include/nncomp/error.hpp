#pragma once

#include <stdexcept>
#include <string>

namespace nncomp {

// Base for every error raised by the library. Callers that only need to
// report a failure can catch this type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

}  // namespace nncomp
