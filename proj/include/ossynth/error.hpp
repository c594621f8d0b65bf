#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ossynth {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t col)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + what),
        line_(line),
        col_(col) {}

  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t line_;
  std::size_t col_;
};

// os-core
struct CycleError : Error { using Error::Error; };
struct UnknownSort : Error { using Error::Error; };
struct IllTyped : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };

// trs-frontend
struct UndeclaredVariable : Error { using Error::Error; };
struct IllTypedRule : Error { using Error::Error; };
struct SignatureCheckFailure : Error { using Error::Error; };
struct IncoherentSignature : Error { using Error::Error; };

// derivor / farkas
struct MissingInterp : Error { using Error::Error; };
struct UnsupportedFormula : Error { using Error::Error; };
struct NotAffine : Error { using Error::Error; };

// solver / smt
struct UnboundParam : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct MissingBinding : Error { using Error::Error; };

// model-report
struct EmptyDomain : Error { using Error::Error; };

}  // namespace ossynth
