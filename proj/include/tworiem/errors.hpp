#pragma once

#include <stdexcept>
#include <string>

namespace tworiem {

// Base class for every error this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (ln of a
// non-positive value, division by zero, abs at the kink, ...).
struct DomainError : Error {
  using Error::Error;
};

struct ParseError : Error {
  std::size_t offset;
  ParseError(std::size_t at, const std::string& what)
      : Error("parse error at offset " + std::to_string(at) + ": " + what),
        offset(at) {}
};

struct UnknownIdentifier : Error {
  std::size_t offset;
  UnknownIdentifier(std::size_t at, const std::string& name)
      : Error("unknown identifier '" + name + "' at offset " +
              std::to_string(at)),
        offset(at) {}
};

struct NotSPD : Error {
  using Error::Error;
};

struct IndexOutOfRange : Error {
  using Error::Error;
};

struct AxiomViolation : Error {
  using Error::Error;
};

struct DegenerateJacobian : Error {
  using Error::Error;
};

struct PreconditionFailed : Error {
  using Error::Error;
};

struct NonPositiveG : Error {
  using Error::Error;
};

struct NonPositiveLambda : Error {
  using Error::Error;
};

struct SingularGMatrix : Error {
  using Error::Error;
};

struct ScenarioParseError : Error {
  using Error::Error;
};

}  // namespace tworiem
