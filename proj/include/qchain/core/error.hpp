#pragma once

#include <stdexcept>
#include <string>

namespace qchain {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or input document. `field()` names the offending key.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)), detail_(what) {}
  const std::string& field() const noexcept { return field_; }
  /// The message without the field prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string field_;
  std::string detail_;
};

/// The executable discrete-log oracle refuses non-attackable groups.
class OracleRefusal : public Error {
 public:
  using Error::Error;
};

/// A quantum device lacks the qubits for the requested problem size.
class InfeasibleError : public Error {
 public:
  InfeasibleError(long long shortfall, const std::string& what)
      : Error(what), shortfall_(shortfall) {}
  long long shortfall() const noexcept { return shortfall_; }

 private:
  long long shortfall_;
};

class RecoveryError : public Error {
 public:
  using Error::Error;
};

}  // namespace qchain
