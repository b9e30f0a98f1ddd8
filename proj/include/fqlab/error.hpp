#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fqlab {

enum class ErrorCode {
  NotPrime,
  EvenCharacteristic,
  ReducibleModulus,
  UnsupportedDegree,
  DivisionByZero,
  ZeroParameter,
  DimensionMismatch,
  BudgetExceeded,
  OutOfRange,
  HypothesisNotMet,
  ResidualTooLarge,
  EmptyFactor,
  OddDimension,
  EvenDimension,
  MinusOneNotSquare,
  MinusOneIsSquare,
  ParseError,
  ConfigError,
};

constexpr std::string_view error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::EvenCharacteristic: return "EvenCharacteristic";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::UnsupportedDegree: return "UnsupportedDegree";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ZeroParameter: return "ZeroParameter";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::HypothesisNotMet: return "HypothesisNotMet";
    case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorCode::EmptyFactor: return "EmptyFactor";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::EvenDimension: return "EvenDimension";
    case ErrorCode::MinusOneNotSquare: return "MinusOneNotSquare";
    case ErrorCode::MinusOneIsSquare: return "MinusOneIsSquare";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace fqlab
