#pragma once

#include <stdexcept>
#include <string>

namespace avt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A model parameter bundle fails one of the structural hypotheses.
/// `clause()` names it: "H-1", "H-2", "H-3", "H-4a" ... "H-4d".
class HypothesisViolation : public Error {
 public:
  HypothesisViolation(std::string clause, const std::string& what)
      : Error(clause + ": " + what), clause_(std::move(clause)) {}
  const std::string& clause() const noexcept { return clause_; }

 private:
  std::string clause_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class NotCongested : public Error {
 public:
  using Error::Error;
};

class NoCongestedRoot : public Error {
 public:
  using Error::Error;
};

class InvalidState : public Error {
 public:
  using Error::Error;
};

class InvalidControl : public Error {
 public:
  using Error::Error;
};

class InvalidInitialData : public Error {
 public:
  using Error::Error;
};

/// An event could not be matched to any interaction row. Signals an engine bug.
class UnclassifiableInteraction : public Error {
 public:
  using Error::Error;
};

/// The functional deltas of a classified event break their table row.
class TableViolation : public Error {
 public:
  using Error::Error;
};

/// Finiteness or invariant guard tripped during a run.
class GuardTripped : public Error {
 public:
  using Error::Error;
};

class OutOfSpan : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace avt
