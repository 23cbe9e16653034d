#pragma once

#include <stdexcept>
#include <string>

namespace irtbench {

// Mirrors irtb_status in the public C header; values must stay in sync.
enum class ErrorCode {
  kParse = 1,
  kValidation = 2,
  kTooSmall = 3,
  kSize = 4,
  kNoInformation = 5,
  kEmptyProfile = 6,
  kNumerical = 7,
  kUnsupported = 8,
  kIo = 9,
  kInvalidArgument = 10,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace irtbench
