#pragma once

#include <stdexcept>
#include <string>

namespace distancing {

/// Argument outside an operation's documented domain.
class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Caller broke a precondition that the type system cannot express.
class ContractError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Linear algebra failure, e.g. a singular innovation covariance.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// ODE integration left the admissible state space.
class IntegrationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Detection or ground-truth stream violates the record format.
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input source cannot be opened or read.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Pipeline configuration is malformed or out of range.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Analytic failure while processing a specific frame.
class FrameError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace distancing
