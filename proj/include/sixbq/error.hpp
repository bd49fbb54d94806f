#pragma once

#include <stdexcept>
#include <string>

namespace sixbq {

// Numeric values are part of the C ABI (see sixbq.h); append only.
enum class ErrorCode : int {
  kOk = 0,
  kInvalidArgument = 1,
  kGridMismatch = 2,
  kNonFinite = 3,
  kInvalidBeta = 4,
  kZeroModeViolation = 5,
  kDivergence = 6,
  kEmptyTrajectory = 7,
  kGridTooLarge = 8,
  kUndersampled = 9,
  kConfigParse = 10,
  kConfigSemantic = 11,
  kIo = 12,
  kFitFailure = 13,
  kInternal = 99,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const char* what) {
  if (!cond) throw Error(code, what);
}

// Builds the message even when cond holds; keep it out of per-element loops.
inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) throw Error(code, what);
}

}  // namespace sixbq
