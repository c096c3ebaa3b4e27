#pragma once

namespace sparselocal {

inline constexpr const char* kVersion = "0.1.0";

// Identifier for the pinned random pipeline (engine + stream derivation +
// variate mappings). Bump whenever any of those change, since stored seeds
// stop reproducing the same graphs.
inline constexpr const char* kRngId = "mt19937_64/splitmix64-streams/v1";

}  // namespace sparselocal
