#pragma once

#include <stdexcept>
#include <string>

namespace rateless {

// Argument outside the mathematical domain of a function (e.g. delta not in (0,1)).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Quadrature or series failed to reach the requested tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid experiment configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Too few samples to produce a meaningful estimate.
class SampleSizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A sampler exhausted its retry budget (pathological geometry).
class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rateless
