#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace fpforge {

/// Deterministic named sub-stream of a run seed. Uses FNV-1a on the name so
/// the mapping does not depend on the standard library's std::hash.
inline std::mt19937_64 substream(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace fpforge
