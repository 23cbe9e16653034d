#include "core/error.hpp"

namespace irtbench {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kValidation: return "validation error";
    case ErrorCode::kTooSmall: return "too small";
    case ErrorCode::kSize: return "size limit exceeded";
    case ErrorCode::kNoInformation: return "no information";
    case ErrorCode::kEmptyProfile: return "empty profile";
    case ErrorCode::kNumerical: return "numerical error";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kInvalidArgument: return "invalid argument";
  }
  return "unknown error";
}

}  // namespace irtbench
