#include "gml/config.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "gml/error.hpp"

namespace gml {

namespace {

unsigned initial_cap() {
  const char* env = std::getenv("GML_DEPTH_CAP");
  if (env == nullptr || *env == '\0') return kDefaultDepthCap;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (*end != '\0' || v < 1 || v > kMaxRepresentableDepth) return kDefaultDepthCap;
  return static_cast<unsigned>(v);
}

std::atomic<unsigned>& cap_storage() {
  static std::atomic<unsigned> cap{initial_cap()};
  return cap;
}

}  // namespace

unsigned depth_cap() noexcept { return cap_storage().load(std::memory_order_relaxed); }

void set_depth_cap(unsigned cap) {
  if (cap < 1 || cap > kMaxRepresentableDepth) {
    fail(ErrorCode::InvalidArgument,
         "depth cap must lie in [1, 63], got " + std::to_string(cap));
  }
  cap_storage().store(cap, std::memory_order_relaxed);
}

void require_within_cap(unsigned depth, const char* what) {
  const unsigned cap = depth_cap();
  if (depth > cap) {
    fail(ErrorCode::DepthCap, std::string(what) + ": depth " + std::to_string(depth) +
                                  " exceeds depth cap " + std::to_string(cap));
  }
}

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::Domain: return "domain error";
    case ErrorCode::InstanceTooShort: return "instance too short";
    case ErrorCode::DepthCap: return "depth cap exceeded";
    case ErrorCode::Disjointness: return "disjointness violation";
    case ErrorCode::ZeroWeight: return "zero weight";
    case ErrorCode::Overflow: return "overflow";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::Config: return "config error";
    case ErrorCode::Io: return "I/O error";
    case ErrorCode::Internal: return "internal error";
  }
  return "unknown error";
}

}  // namespace gml
