#pragma once

#include <stdexcept>
#include <string>

namespace astrid {

// Error categories map 1:1 onto CLI exit codes (see tools/astrid_main.cpp):
// Config -> 2, Data -> 3, Judge -> 4, Internal -> 5.
enum class ErrorKind { Config, Data, Judge, Internal };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

struct ConfigError : Error {
  explicit ConfigError(std::string message)
      : Error(ErrorKind::Config, std::move(message)) {}
};

struct DataError : Error {
  explicit DataError(std::string message)
      : Error(ErrorKind::Data, std::move(message)) {}
};

struct JudgeError : Error {
  explicit JudgeError(std::string message)
      : Error(ErrorKind::Judge, std::move(message)) {}
};

struct InternalError : Error {
  explicit InternalError(std::string message)
      : Error(ErrorKind::Internal, std::move(message)) {}
};

}  // namespace astrid
