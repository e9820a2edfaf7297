#pragma once

#include <stdexcept>
#include <string>

namespace fdaloha {

// Base class for all error conditions raised by this library.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A physical or model parameter lies outside its domain.
class InvalidParameter : public ModelError {
 public:
  using ModelError::ModelError;
};

// Residual self-interference factor outside the supported (1/2, 1] range.
class InfeasibleBeta : public InvalidParameter {
 public:
  explicit InfeasibleBeta(double beta)
      : InvalidParameter("beta = " + std::to_string(beta) +
                         " outside (0.5, 1]; residual self-interference too strong") {}
};

// The queried receiver is not an addressee under the pair's own strategy.
class InvalidRole : public ModelError {
 public:
  using ModelError::ModelError;
};

// No symmetric mixed equilibrium without dominated actions exists for the
// given cost policy.
class NoEquilibrium : public ModelError {
 public:
  using ModelError::ModelError;
};

// Requested full-duplex weight lies outside the feasible band of the
// equilibrium family.
class OutOfBand : public ModelError {
 public:
  using ModelError::ModelError;
};

// A scenario file failed to parse or validate.
class ScenarioError : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

}  // namespace fdaloha
