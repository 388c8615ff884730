#pragma once

#include <stdexcept>

namespace charsum {

// bad input to a mathematical operation (hypothesis not met)
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class TowerError : public DomainError {
public:
  using DomainError::DomainError;
};

// a configured size bound would be exceeded
class SizeBoundError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// a check that must hold by theory failed; always a bug or a wrong convention
class InvariantError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// configuration outside what the trace-function layer supports
class UnsupportedError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace charsum
