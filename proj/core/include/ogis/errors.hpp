#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ogis {

// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidLanguage : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

// A learner received the same example as positive and as counterexample.
class InconsistentInput : public Error {
 public:
  using Error::Error;
};

// An example showed up both in the transcript and in the counterexample
// sequence. Always a defect in the oracle.
class InconsistentOracle : public Error {
 public:
  using Error::Error;
};

class PhaseError : public Error {
 public:
  using Error::Error;
};

class NoConsistentConcept : public Error {
 public:
  using Error::Error;
};

class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

class MemoryBoundExceeded : public Error {
 public:
  MemoryBoundExceeded(std::size_t observed, std::size_t bound)
      : Error("learner state of " + std::to_string(observed) + " bytes exceeds bound of " +
              std::to_string(bound) + " bytes"),
        observed_(observed),
        bound_(bound) {}

  std::size_t observed() const { return observed_; }
  std::size_t bound() const { return bound_; }

 private:
  std::size_t observed_;
  std::size_t bound_;
};

class UnknownLearner : public Error {
 public:
  using Error::Error;
};

class DomainTooLarge : public Error {
 public:
  using Error::Error;
};

class Uncoverable : public Error {
 public:
  using Error::Error;
};

class UnsupportedInterface : public Error {
 public:
  using Error::Error;
};

// Malformed input text. `line` is 1-based; 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(line == 0 ? message : "line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ogis
