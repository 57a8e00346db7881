#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace birat {

enum class ErrorCode {
  ZeroPolynomial,
  ZeroDivisor,
  NonInvertibleLead,
  ConstantPolynomial,
  DivisionByZero,
  SymbolicUnderdetermined,
  NotDivisible,
  ConstantComponent,
  InvalidInput,
  MalformedCertificate,
  SyntaxError,
  ExponentOverflow,
};

std::string_view to_string(ErrorCode code);

/// Every recoverable failure in the library surfaces as an Error carrying a
/// machine-readable code. Tower splits are not errors and use SplitSignal.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with a 1-based character position.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : Error(ErrorCode::SyntaxError,
              "syntax error at position " + std::to_string(position) + ": " +
                  message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace birat
