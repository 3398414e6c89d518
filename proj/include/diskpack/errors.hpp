#ifndef DISKPACK_ERRORS_HPP
#define DISKPACK_ERRORS_HPP

#include <stdexcept>
#include <string>

#include "diskpack/vec3.hpp"

namespace diskpack {

enum class ErrorCode {
  kInvalidInput,
  kGeometry,
  kSizeExceeded,
  kMalformedDocument,
  kDuplicateDisk,
  kZeroVector,
  kNonFinite,
  kInternal,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what, ErrorCode code = ErrorCode::kInvalidInput)
      : Error(code, what) {}
};

/// Raised when no contact configuration of an s-distance computation passes
/// validation. Carries the offending inputs so the failure can be reproduced.
class GeometryError : public Error {
 public:
  GeometryError(const std::string& what, const Vec3& n1, const Vec3& n2, const Vec3& s)
      : Error(ErrorCode::kGeometry, what), n1_(n1), n2_(n2), s_(s) {}

  const Vec3& first_normal() const { return n1_; }
  const Vec3& second_normal() const { return n2_; }
  const Vec3& direction() const { return s_; }

 private:
  Vec3 n1_;
  Vec3 n2_;
  Vec3 s_;
};

class SizeExceeded : public Error {
 public:
  explicit SizeExceeded(const std::string& what) : Error(ErrorCode::kSizeExceeded, what) {}
};

}  // namespace diskpack

#endif  // DISKPACK_ERRORS_HPP
