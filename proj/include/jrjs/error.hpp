#pragma once

#include <stdexcept>
#include <string>

namespace jrjs {

enum class ErrorCode {
  InvalidParams,
  UnsupportedPower,
  NoNullSpace,
  DegenerateChannel,
  DimensionMismatch,
  DegenerateDenominator,
  InfeasibleInterval,
  InfeasibleRate,
  Config,
  Io,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::UnsupportedPower: return "UnsupportedPower";
    case ErrorCode::NoNullSpace: return "NoNullSpace";
    case ErrorCode::DegenerateChannel: return "DegenerateChannel";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::InfeasibleInterval: return "InfeasibleInterval";
    case ErrorCode::InfeasibleRate: return "InfeasibleRate";
    case ErrorCode::Config: return "Config";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

/// Exception carrying a machine-checkable code next to the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace jrjs
