#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace finsler {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Evaluation and input errors.

class DomainError : public Error {
 public:
  using Error::Error;
};

class NonFiniteError : public Error {
 public:
  using Error::Error;
};

class BasisMismatch : public Error {
 public:
  using Error::Error;
};

class ZeroVelocity : public Error {
 public:
  using Error::Error;
};

class ConvexityError : public Error {
 public:
  using Error::Error;
};

class NotOnIndicatrix : public Error {
 public:
  using Error::Error;
};

class DegenerateError : public Error {
 public:
  using Error::Error;
};

class SingularCoframe : public Error {
 public:
  using Error::Error;
};

class NonPositiveU : public Error {
 public:
  using Error::Error;
};

class InterpolationError : public Error {
 public:
  using Error::Error;
};

/// Parse failure; `offset()` is the byte offset into the source text.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownIdentifier : public Error {
 public:
  UnknownIdentifier(const std::string& name, std::size_t offset);
  const std::string& name() const noexcept { return name_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::string name_;
  std::size_t offset_;
};

/// The metric is well defined but does not fall in the requested curvature case.
class CaseError : public Error {
 public:
  using Error::Error;
};

class NotConstantCurvature : public CaseError {
 public:
  using CaseError::CaseError;
};

class CaseMismatch : public CaseError {
 public:
  using CaseError::CaseError;
};

class NonMonotone : public CaseError {
 public:
  using CaseError::CaseError;
};

}  // namespace finsler
