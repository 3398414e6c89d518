#include "diskpack/errors.hpp"

namespace diskpack {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput:
      return "invalid-input";
    case ErrorCode::kGeometry:
      return "geometry";
    case ErrorCode::kSizeExceeded:
      return "size-exceeded";
    case ErrorCode::kMalformedDocument:
      return "malformed-document";
    case ErrorCode::kDuplicateDisk:
      return "duplicate-disk";
    case ErrorCode::kZeroVector:
      return "zero-vector";
    case ErrorCode::kNonFinite:
      return "non-finite";
    case ErrorCode::kInternal:
      return "internal";
  }
  return "unknown";
}

}  // namespace diskpack
