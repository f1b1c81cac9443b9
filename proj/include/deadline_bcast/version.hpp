#pragma once

namespace dbc {

inline constexpr const char* kVersion = "0.1.0";

// The one PRNG used anywhere in the library; recorded in all simulation
// output metadata.
inline constexpr const char* kGeneratorName = "mt19937_64";

}  // namespace dbc
