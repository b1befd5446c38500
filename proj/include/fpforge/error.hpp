#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fpforge {

enum class ErrorCode {
  InvalidArgument,
  GridMismatch,
  DegenerateAngle,
  NotAContraction,
  NoConvergence,
  ContinuationStalled,
  NoEpsilon0,
  BlowupBeforeT,
  CertificateRequired,
  Config,
};

[[nodiscard]] constexpr const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::DegenerateAngle: return "DegenerateAngle";
    case ErrorCode::NotAContraction: return "NotAContraction";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ContinuationStalled: return "ContinuationStalled";
    case ErrorCode::NoEpsilon0: return "NoEpsilon0";
    case ErrorCode::BlowupBeforeT: return "BlowupBeforeT";
    case ErrorCode::CertificateRequired: return "CertificateRequired";
    case ErrorCode::Config: return "Config";
  }
  return "Unknown";
}

/// Base class for every error the library throws. The code identifies the
/// failure class so callers (the CLI in particular) can map it to an exit
/// status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrorCode::InvalidArgument, what);
}

}  // namespace fpforge
