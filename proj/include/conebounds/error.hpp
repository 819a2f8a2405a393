#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace conebounds {

enum class ErrorKind { Parse, Geometry, Domain, Usage, Accuracy, Solver };

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Geometry: return "geometry";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Usage: return "usage";
    case ErrorKind::Accuracy: return "accuracy";
    case ErrorKind::Solver: return "solver";
  }
  return "unknown";
}

/// Base of every exception thrown by the library. The kind selects the CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorKind::Parse, what) {}
};

class GeometryError : public Error {
 public:
  explicit GeometryError(const std::string& what) : Error(ErrorKind::Geometry, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::Usage, what) {}
};

class AccuracyError : public Error {
 public:
  explicit AccuracyError(const std::string& what) : Error(ErrorKind::Accuracy, what) {}
};

class SolverError : public Error {
 public:
  explicit SolverError(const std::string& what) : Error(ErrorKind::Solver, what) {}
};

}  // namespace conebounds
