// Copyright (c) 2026 The voxelvist authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace voxelvist {

/// Integer block coordinate. x/z span the horizontal plane, y is vertical.
using BlockPos = Eigen::Vector3i;

inline constexpr const char* kVersion = "0.1.0";

/// Ordering used for all deterministic position listings: (y, x, z).
struct PosLessYXZ {
  bool operator()(const BlockPos& a, const BlockPos& b) const {
    if (a.y() != b.y()) return a.y() < b.y();
    if (a.x() != b.x()) return a.x() < b.x();
    return a.z() < b.z();
  }
};

// Packed 64-bit key for hash containers. Coordinates must stay within
// +/- 2^20 blocks, far beyond any world this engine loads.
inline std::uint64_t pos_key(const BlockPos& p) {
  constexpr std::uint64_t bias = 1u << 20;
  constexpr std::uint64_t mask = (1u << 21) - 1;
  return ((static_cast<std::uint64_t>(p.x()) + bias) & mask) << 42 |
         ((static_cast<std::uint64_t>(p.y()) + bias) & mask) << 21 |
         ((static_cast<std::uint64_t>(p.z()) + bias) & mask);
}

/// splitmix64 step. Pinned here so sampling is reproducible byte-for-byte
/// across platforms and standard libraries.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Derives an independent stream seed from (seed, lane).
inline std::uint64_t split_seed(std::uint64_t seed, std::int64_t lane) {
  std::uint64_t s = seed ^ (static_cast<std::uint64_t>(lane) * 0xD1B54A32D192ED03ull);
  return splitmix64(s);
}

/// Uniform draw in [0, n) by rejection; n must be > 0.
inline std::uint64_t bounded_rand(std::uint64_t& state, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
  std::uint64_t v;
  do {
    v = splitmix64(state);
  } while (v < threshold);
  return v % n;
}

/// FNV-1a 64-bit over a byte range; used for input/output fingerprints.
inline std::uint64_t fnv1a64(const void* data, std::size_t len,
                             std::uint64_t h = 0xCBF29CE484222325ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001B3ull;
  }
  return h;
}

/// Formats a double with 6 significant digits, the CSV float convention.
std::string format_real(double v);

/// Raised for malformed or structurally invalid input files.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace voxelvist
