#pragma once

#include <stdexcept>
#include <string>

namespace abcmab {

// Base for every error raised by the library. Subclasses name the failing
// contract so callers can react (the harness turns any of them into a null
// report cell).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ModelError : public Error {
  using Error::Error;
};
class InputError : public Error {
  using Error::Error;
};
class ConfigError : public Error {
  using Error::Error;
};
class StateError : public Error {
  using Error::Error;
};
class LookupError : public Error {
  using Error::Error;
};
class SelectionError : public Error {
  using Error::Error;
};
class ContractError : public Error {
  using Error::Error;
};
class EstimationError : public Error {
  using Error::Error;
};

}  // namespace abcmab
