#pragma once

#include <stdexcept>
#include <string>

namespace sourcecount {

/// Invalid scenario, estimator settings, or input file. Maps to CLI exit code 2.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Eigen-solver failure, singular model covariance, nonpositive spectrum.
/// Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace sourcecount
