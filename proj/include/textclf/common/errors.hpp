#pragma once

#include <stdexcept>
#include <string>

namespace textclf {

/// Malformed or unusable input data (corpus files, model files, labels).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite values reached a loss, gradient or parameter.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid option combination supplied by a caller.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace textclf
