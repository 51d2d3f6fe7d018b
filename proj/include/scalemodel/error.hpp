#pragma once

#include <stdexcept>
#include <string>

namespace scalemodel {

// Raised for invalid model inputs and degenerate model evaluations.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised for malformed configuration documents and input files.
class ConfigError : public ModelError {
 public:
  using ModelError::ModelError;
};

}  // namespace scalemodel
