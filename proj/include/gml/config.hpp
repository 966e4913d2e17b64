#pragma once

namespace gml {

/// Hard representation limit: cells are stored as 64-bit integers.
inline constexpr unsigned kMaxRepresentableDepth = 63;
inline constexpr unsigned kDefaultDepthCap = 20;

/// Current depth cap. Initialized from GML_DEPTH_CAP when set, otherwise 20.
unsigned depth_cap() noexcept;

/// Overrides the cap for this process. Values outside [1, 63] are rejected.
void set_depth_cap(unsigned cap);

/// Throws ErrorCode::DepthCap when depth exceeds the configured cap.
void require_within_cap(unsigned depth, const char* what);

}  // namespace gml
