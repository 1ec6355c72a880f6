#pragma once

#include <stdexcept>
#include <string>

namespace softspace {

// Exit codes reported by the command-line driver.
enum class ExitCode : int {
  Ok = 0,
  Usage = 2,
  Data = 3,
  Invariant = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

// Bad argument to a library call (precondition on a parameter value).
class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& what) : Error(ExitCode::Usage, what) {}
};

// Malformed configuration: alias tables, taxonomies, config files.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ExitCode::Usage, what) {}
};

// Input data that cannot be processed.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ExitCode::Data, what) {}
};

// A numerical fit that cannot be carried out on the given data.
class FitError : public Error {
 public:
  explicit FitError(const std::string& what) : Error(ExitCode::Data, what) {}
};

class InvariantError : public Error {
 public:
  explicit InvariantError(const std::string& what) : Error(ExitCode::Invariant, what) {}
};

}  // namespace softspace
