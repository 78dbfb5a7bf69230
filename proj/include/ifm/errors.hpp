#pragma once

#include <stdexcept>
#include <string>

namespace ifm {

/// Configuration could not be parsed or validated. Carries the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Quadrature or root finding failed to reach its tolerance.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evanescent decay constant is not real: the coupler is not in total reflection.
class NoEvanescentFieldError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested reflectivity lies outside what the coupler can reach.
class NoSolutionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ifm
