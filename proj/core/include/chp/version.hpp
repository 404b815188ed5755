#pragma once

namespace chp {

// Bumping this invalidates every on-disk cache entry and report schema.
inline constexpr const char* kEngineVersion = "0.1.0";
inline constexpr unsigned kCacheFormatVersion = 1;

}  // namespace chp
