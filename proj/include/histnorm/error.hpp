#pragma once

#include <stdexcept>
#include <string>

namespace histnorm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad input data: unreadable files, malformed lines, mismatched corpora.
struct DataError : Error {
  using Error::Error;
};

// Invalid parameter values (order < 1, empty training set, ...).
struct ParamError : Error {
  using Error::Error;
};

}  // namespace histnorm
