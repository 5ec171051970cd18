#pragma once

#include <stdexcept>
#include <string>

namespace labelaudit {

// Base for all pipeline errors. code() is the stable machine-readable
// identifier emitted in error records.
class Error : public std::runtime_error {
 public:
  explicit Error(std::string message) : std::runtime_error(std::move(message)) {}
  virtual const char* code() const noexcept { return "Error"; }
};

struct SchemaError : Error {
  using Error::Error;
  const char* code() const noexcept override { return "SchemaError"; }
};

struct ExclusivityViolation : Error {
  using Error::Error;
  const char* code() const noexcept override { return "ExclusivityViolation"; }
};

struct RetriesExhausted : Error {
  using Error::Error;
  const char* code() const noexcept override { return "RetriesExhausted"; }
};

struct NetworkError : Error {
  using Error::Error;
  const char* code() const noexcept override { return "NetworkError"; }
};

struct EmptyDocument : Error {
  using Error::Error;
  const char* code() const noexcept override { return "EmptyDocument"; }
};

struct DimensionMismatch : Error {
  using Error::Error;
  const char* code() const noexcept override { return "DimensionMismatch"; }
};

struct EmptyModel : Error {
  using Error::Error;
  const char* code() const noexcept override { return "EmptyModel"; }
};

struct InsufficientData : Error {
  using Error::Error;
  const char* code() const noexcept override { return "InsufficientData"; }
};

struct MissingClassifier : Error {
  using Error::Error;
  const char* code() const noexcept override { return "MissingClassifier"; }
};

struct RuleConfigError : Error {
  using Error::Error;
  const char* code() const noexcept override { return "RuleConfigError"; }
};

struct AppIdMismatch : Error {
  using Error::Error;
  const char* code() const noexcept override { return "AppIdMismatch"; }
};

struct UnknownFacet : Error {
  using Error::Error;
  const char* code() const noexcept override { return "UnknownFacet"; }
};

struct IOFailure : Error {
  using Error::Error;
  const char* code() const noexcept override { return "IOFailure"; }
};

struct EmptyInput : Error {
  using Error::Error;
  const char* code() const noexcept override { return "EmptyInput"; }
};

struct ConfigError : Error {
  using Error::Error;
  const char* code() const noexcept override { return "ConfigError"; }
};

struct MissingDependency : Error {
  using Error::Error;
  const char* code() const noexcept override { return "MissingDependency"; }
};

}  // namespace labelaudit
