#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qdrive {

enum class ErrorKind {
  Validation,  // malformed state, matrix or probability
  Domain,      // argument outside an operation's domain
  Numerical,   // series failed to converge within its term cap
  Resource,    // enumeration guard exceeded
  Io,
  Usage,       // malformed sweep spec or unknown function name
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error(ErrorKind::Validation, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorKind::Domain, what) {}
};

// Thrown when a truncated series hits its term cap before the tail bound
// falls under tolerance. Carries what had been summed so far.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double partial_sum,
                 std::uint64_t terms)
      : Error(ErrorKind::Numerical, what),
        partial_sum_(partial_sum),
        terms_(terms) {}
  double partial_sum() const noexcept { return partial_sum_; }
  std::uint64_t terms() const noexcept { return terms_; }

 private:
  double partial_sum_;
  std::uint64_t terms_;
};

class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what)
      : Error(ErrorKind::Resource, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

// Unknown sweep function names get their own type so front ends can map
// them to a distinct exit status.
class UnknownFunctionError : public Error {
 public:
  explicit UnknownFunctionError(const std::string& name)
      : Error(ErrorKind::Usage, "unknown function '" + name + "'"),
        name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what)
      : Error(ErrorKind::Usage, what) {}
};

}  // namespace qdrive
