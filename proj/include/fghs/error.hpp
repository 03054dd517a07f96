#pragma once

#include <stdexcept>
#include <string>

namespace fghs {

enum class ErrorKind {
  NotPositiveDefinite,
  DimensionMismatch,
  ParameterDomain,
  InfeasibleSparsity,
  Format,
  Config,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class NotPositiveDefinite : public Error {
 public:
  explicit NotPositiveDefinite(const std::string& what)
      : Error(ErrorKind::NotPositiveDefinite, what) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what)
      : Error(ErrorKind::DimensionMismatch, what) {}
};

class ParameterDomain : public Error {
 public:
  explicit ParameterDomain(const std::string& what)
      : Error(ErrorKind::ParameterDomain, what) {}
};

class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what) : Error(ErrorKind::Format, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

}  // namespace fghs
