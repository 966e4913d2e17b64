#pragma once

#include <stdexcept>
#include <string>

namespace gml {

enum class ErrorCode {
  InvalidArgument,
  Domain,
  InstanceTooShort,
  DepthCap,
  Disjointness,
  ZeroWeight,
  Overflow,
  Parse,
  Config,
  Io,
  Internal,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so the
// C API can map it onto a status without string matching.
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

}  // namespace gml
