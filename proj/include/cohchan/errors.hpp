#pragma once

#include <stdexcept>
#include <string>

namespace cohchan {

// Every failure raised by the library derives from Error. The category maps
// one-to-one onto the CLI exit codes.
enum class ErrorCategory {
  InvalidInput = 2,     // malformed shapes, non-Hermitian input, bad documents
  NotCptp = 3,          // complete positivity or trace preservation violated
  ParameterRegime = 4,  // (r, s) outside the admissible range
  Precondition = 5,     // e.g. mixed CJ state given to the pure formula
  Numerical = 6,        // eigensolver failed to converge
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class InvalidInputError : public Error {
 public:
  explicit InvalidInputError(const std::string& what)
      : Error(ErrorCategory::InvalidInput, what) {}
};

class NotHermitianError : public InvalidInputError {
 public:
  NotHermitianError(const std::string& what, double asymmetry)
      : InvalidInputError(what), asymmetry_(asymmetry) {}
  double asymmetry() const noexcept { return asymmetry_; }

 private:
  double asymmetry_;
};

class NotPsdError : public InvalidInputError {
 public:
  NotPsdError(const std::string& what, double min_eigenvalue)
      : InvalidInputError(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

class NotCptpError : public Error {
 public:
  explicit NotCptpError(const std::string& what) : Error(ErrorCategory::NotCptp, what) {}
};

class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& what)
      : Error(ErrorCategory::ParameterRegime, what) {}
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(ErrorCategory::Precondition, what) {}
};

class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what)
      : Error(ErrorCategory::Numerical, what) {}
};

}  // namespace cohchan
